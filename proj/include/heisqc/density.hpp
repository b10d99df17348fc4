#ifndef HEISQC_DENSITY_HPP
#define HEISQC_DENSITY_HPP

#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "heisqc/domain.hpp"
#include "heisqc/error.hpp"
#include "heisqc/heis_core.hpp"
#include "heisqc/numerics.hpp"

namespace heisqc {

enum class DensityKind { heisenberg, plane };

/// A nonnegative field on a Heisenberg or half-plane domain.
///
/// `axis_exponent` is an optional hint that the density behaves like |z|^p near
/// the vertical axis; the integrator uses it to remove integrable singularities.
struct Density {
  DensityKind kind = DensityKind::heisenberg;
  std::function<double(const HPoint&)> heis;
  std::function<double(cplx)> plane;
  DomainDescriptor domain = domain::Whole{};
  std::optional<double> axis_exponent;

  double operator()(const HPoint& p) const {
    if (kind != DensityKind::heisenberg) throw Error(ErrorCode::InvalidArgument, "plane density evaluated at HPoint");
    return heis(p);
  }
  double operator()(cplx w) const {
    if (kind != DensityKind::plane) throw Error(ErrorCode::InvalidArgument, "Heisenberg density evaluated at w");
    return plane(w);
  }

  static Density on_heisenberg(std::function<double(const HPoint&)> f, DomainDescriptor d,
                               std::optional<double> axis_exponent = std::nullopt) {
    validate_domain(d);
    Density r;
    r.kind = DensityKind::heisenberg;
    r.heis = std::move(f);
    r.domain = std::move(d);
    r.axis_exponent = axis_exponent;
    return r;
  }

  static Density on_plane(std::function<double(cplx)> f, DomainDescriptor d) {
    validate_domain(d);
    Density r;
    r.kind = DensityKind::plane;
    r.plane = std::move(f);
    r.domain = std::move(d);
    return r;
  }
};

inline Density scaled(const Density& rho, double c) {
  Density r = rho;
  if (rho.kind == DensityKind::heisenberg) {
    r.heis = [f = rho.heis, c](const HPoint& p) { return c * f(p); };
  } else {
    r.plane = [f = rho.plane, c](cplx w) { return c * f(w); };
  }
  return r;
}

struct Grid3 {
  int n_r = 64;
  int n_theta = 64;
  int n_t = 64;
};

struct Grid2 {
  int n_x = 64;
  int n_y = 64;
};

namespace detail {

// Nodes exactly on the axis are evaluated this far inside (relative).
inline constexpr double kAxisNudge = 1e-12;

inline std::vector<double> periodic_nodes(int n) {
  std::vector<double> a(n);
  for (int j = 0; j < n; ++j) a[j] = 2.0 * std::numbers::pi * j / n;
  return a;
}

// Radial rule on [r_lo, r_hi] for integrands ~ r^q (times the r volume
// factor). Returns nodes and weights that already include r dr; for a
// singular q in (-2, 0) at r_lo = 0 the substitution r = R u^m, m = 1/(q+2),
// turns the integrand into a smooth function of u.
inline std::pair<std::vector<double>, std::vector<double>> radial_rule(int n, double r_lo, double r_hi,
                                                                       std::optional<double> q) {
  n = num::even_intervals(n);
  std::vector<double> nodes(n + 1), weights(n + 1);
  if (r_lo == 0.0 && q && *q < 0.0) {
    if (*q <= -2.0) throw Error(ErrorCode::UnsupportedDomain, "non-integrable axis singularity");
    const double m = 1.0 / (*q + 2.0);
    const auto w = num::simpson_weights(n, 0.0, 1.0);
    for (int i = 0; i <= n; ++i) {
      const double u = std::max(static_cast<double>(i) / n, kAxisNudge);
      const double r = r_hi * std::pow(u, m);
      nodes[i] = r;
      // r dr = r * R m u^(m-1) du
      weights[i] = w[i] * r * r_hi * m * std::pow(u, m - 1.0);
    }
    return {nodes, weights};
  }
  const auto w = num::simpson_weights(n, r_lo, r_hi);
  for (int i = 0; i <= n; ++i) {
    double r = r_lo + (r_hi - r_lo) * i / n;
    if (r == 0.0) r = kAxisNudge * r_hi;
    nodes[i] = r;
    weights[i] = w[i] * r;
  }
  return {nodes, weights};
}

inline std::vector<double> nudged_linspace(double lo, double hi, int n) {
  auto x = num::linspace(lo, hi, n);
  const double d = kAxisNudge * (hi - lo);
  x.front() += d;
  x.back() -= d;
  return x;
}

}  // namespace detail

/// Integral of `integrand` (a function of HPoint) over a Heisenberg domain,
/// dL^3 being Lebesgue measure on C x R. `axis_exponent` q: integrand ~ |z|^q
/// near the axis (cylindrical domains only).
///
/// Cylindrical domains use r dr dtheta dt with Simpson in r and t and the
/// periodic trapezoid rule in theta. Chart domains use w = phi(s + ix),
/// dL^3 = 1/2 |phi'|^2 ds dx dtheta, and the spherical annulus is the chart of
/// w = e^{s+ix}, s in (2 ln r_lo, 2 ln r_hi), x in (0, pi).
template <class F>
double integrate_heis(const DomainDescriptor& d, const Grid3& grid, F&& integrand,
                      std::optional<double> axis_exponent = std::nullopt) {
  const auto alphas = detail::periodic_nodes(grid.n_theta);
  const double dalpha = 2.0 * std::numbers::pi / grid.n_theta;

  auto cylindrical = [&](double a, double r_lo, double r_hi) {
    const auto [rs, rw] = detail::radial_rule(grid.n_r, r_lo, r_hi, axis_exponent);
    const int nt = num::even_intervals(grid.n_t);
    const auto tw = num::simpson_weights(nt, 0.0, a);
    const auto ts = num::linspace(0.0, a, nt);
    auto slab = num::parallel_map(rs.size(), [&](std::size_t i) {
      std::vector<double> terms;
      terms.reserve(alphas.size() * ts.size());
      for (double al : alphas) {
        const cplx z = std::polar(rs[i], al);
        for (std::size_t k = 0; k < ts.size(); ++k) terms.push_back(tw[k] * integrand(HPoint(z, ts[k])));
      }
      return rw[i] * dalpha * num::pairwise_sum(terms);
    });
    return num::pairwise_sum(slab);
  };

  auto chart = [&](const std::function<cplx(cplx)>& phi, const std::function<cplx(cplx)>& dphi, double s_lo,
                   double s_hi, double x_lo, double x_hi) {
    const int nx = num::even_intervals(grid.n_r);
    const int ns = num::even_intervals(grid.n_t);
    const auto xw = num::simpson_weights(nx, x_lo, x_hi);
    const auto sw = num::simpson_weights(ns, s_lo, s_hi);
    const auto xs = detail::nudged_linspace(x_lo, x_hi, nx);
    const auto ss = num::linspace(s_lo, s_hi, ns);
    auto slab = num::parallel_map(xs.size(), [&](std::size_t i) {
      std::vector<double> terms;
      terms.reserve(alphas.size() * ss.size());
      for (std::size_t k = 0; k < ss.size(); ++k) {
        const cplx zeta(ss[k], xs[i]);
        const cplx w = phi(zeta);
        const double jac = 0.5 * std::norm(dphi(zeta));
        for (double al : alphas) {
          const HPoint p = chart_to_heis(al, HalfPlanePoint(w));
          terms.push_back(sw[k] * jac * integrand(p));
        }
      }
      return xw[i] * dalpha * num::pairwise_sum(terms);
    });
    return num::pairwise_sum(slab);
  };

  return std::visit(
      [&](const auto& x) -> double {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, domain::Cylinder>) {
          return cylindrical(x.a, 0.0, std::sqrt(x.b));
        } else if constexpr (std::is_same_v<T, domain::CylinderShell>) {
          return cylindrical(x.a, std::sqrt(x.b_lo), std::sqrt(x.b_hi));
        } else if constexpr (std::is_same_v<T, domain::SphericalAnnulus>) {
          if (x.r_lo <= 0.0) throw Error(ErrorCode::UnsupportedDomain, "annulus chart needs r_lo > 0");
          auto e = [](cplx w) { return std::exp(w); };
          return chart(e, e, 2.0 * std::log(x.r_lo), 2.0 * std::log(x.r_hi), 0.0, std::numbers::pi);
        } else if constexpr (std::is_same_v<T, domain::ChartImage>) {
          return chart(x.phi.eval, x.phi.deriv, 0.0, x.a, 0.0, x.b);
        } else {
          throw Error(ErrorCode::UnsupportedDomain, "no Heisenberg parameterization for " + domain_name(x));
        }
      },
      d);
}

/// Integral of `integrand(w)` dL^2 over a half-plane domain.
template <class F>
double integrate_plane(const DomainDescriptor& d, const Grid2& grid, F&& integrand) {
  auto rect = [&](auto&& point_and_jac, double a, double b) {
    const int nx = num::even_intervals(grid.n_x), ny = num::even_intervals(grid.n_y);
    const auto xw = num::simpson_weights(nx, 0.0, a);
    const auto yw = num::simpson_weights(ny, 0.0, b);
    const auto xs = num::linspace(0.0, a, nx);
    auto ys = num::linspace(0.0, b, ny);
    ys.front() = detail::kAxisNudge * b;
    auto rows = num::parallel_map(ys.size(), [&](std::size_t j) {
      std::vector<double> terms(xs.size());
      for (std::size_t i = 0; i < xs.size(); ++i) {
        const auto [w, jac] = point_and_jac(cplx(xs[i], ys[j]));
        terms[i] = xw[i] * jac * integrand(w);
      }
      return yw[j] * num::pairwise_sum(terms);
    });
    return num::pairwise_sum(rows);
  };
  return std::visit(
      [&](const auto& x) -> double {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, domain::PlaneRectangle>) {
          return rect([](cplx w) { return std::pair{w, 1.0}; }, x.a, x.b);
        } else if constexpr (std::is_same_v<T, domain::PlaneImage>) {
          return rect([&](cplx z) { return std::pair{x.phi(z), std::norm(x.phi.deriv(z))}; }, x.a, x.b);
        } else {
          throw Error(ErrorCode::UnsupportedDomain, "no plane parameterization for " + domain_name(x));
        }
      },
      d);
}

/// Integral of rho^4 dL^3.
inline double density_energy_heis(const Density& rho, const Grid3& grid = {}) {
  if (rho.kind != DensityKind::heisenberg) throw Error(ErrorCode::InvalidArgument, "expected a Heisenberg density");
  std::optional<double> q;
  if (rho.axis_exponent) q = 4.0 * *rho.axis_exponent;
  return integrate_heis(
      rho.domain, grid,
      [&](const HPoint& p) {
        const double v = rho.heis(p);
        return v * v * v * v;
      },
      q);
}

/// Integral of rho^2 dL^2.
inline double density_energy_plane(const Density& rho, const Grid2& grid = {}) {
  if (rho.kind != DensityKind::plane) throw Error(ErrorCode::InvalidArgument, "expected a plane density");
  return integrate_plane(rho.domain, grid, [&](cplx w) {
    const double v = rho.plane(w);
    return v * v;
  });
}

}  // namespace heisqc

#endif  // HEISQC_DENSITY_HPP
