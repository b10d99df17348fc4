#ifndef HEISQC_MODULUS_HPP
#define HEISQC_MODULUS_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "heisqc/curves.hpp"
#include "heisqc/density.hpp"
#include "heisqc/domain.hpp"
#include "heisqc/error.hpp"
#include "heisqc/holomorphic.hpp"
#include "heisqc/numerics.hpp"
#include "heisqc/qcmaps.hpp"

namespace heisqc {

inline constexpr double kTolAdm = 1e-6;

struct ModulusReport {
  std::optional<double> energy;
  double min_curve_integral = std::numeric_limits<double>::infinity();
  std::array<double, 2> argmin{0.0, 0.0};
  bool admissible = false;
};

/// Minimum of the curve integrals of rho over an n1 x n2 grid of foliation
/// parameters (cell midpoints of the parameter rectangle).
inline ModulusReport admissibility_min(const Density& rho, const Foliation& fam, int n1, int n2, int n_s,
                                       double tol_adm = kTolAdm) {
  if (n1 < 1 || n2 < 1) throw Error(ErrorCode::InvalidArgument, "parameter grid must be non-empty");
  auto l1 = [&](int i) { return fam.l1_lo + (fam.l1_hi - fam.l1_lo) * (i + 0.5) / n1; };
  auto l2 = [&](int j) { return fam.l2_lo + (fam.l2_hi - fam.l2_lo) * (j + 0.5) / n2; };
  const auto vals = num::parallel_map(static_cast<std::size_t>(n1) * n2, [&](std::size_t k) {
    const int i = static_cast<int>(k) / n2, j = static_cast<int>(k) % n2;
    return curve_density_integral(rho, fam(l1(i), l2(j)), n_s);
  });
  ModulusReport r;
  for (std::size_t k = 0; k < vals.size(); ++k) {
    if (vals[k] < r.min_curve_integral) {
      r.min_curve_integral = vals[k];
      r.argmin = {l1(static_cast<int>(k) / n2), l2(static_cast<int>(k) % n2)};
    }
  }
  r.admissible = r.min_curve_integral >= 1.0 - tol_adm;
  return r;
}

/// Plane analogue over a one-parameter family; argmin[1] is 0.
inline ModulusReport admissibility_min(const Density& rho, const PlaneFamily& fam, int n, int n_s,
                                       double tol_adm = kTolAdm) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "parameter grid must be non-empty");
  auto l = [&](int i) { return fam.lo + (fam.hi - fam.lo) * (i + 0.5) / n; };
  const auto vals = num::parallel_map(static_cast<std::size_t>(n),
                                      [&](std::size_t i) { return plane_curve_integral(rho, fam.generator(l(static_cast<int>(i))), n_s); });
  ModulusReport r;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (vals[i] < r.min_curve_integral) {
      r.min_curve_integral = vals[i];
      r.argmin = {l(static_cast<int>(i)), 0.0};
    }
  }
  r.admissible = r.min_curve_integral >= 1.0 - tol_adm;
  return r;
}

/// A closed-form modulus with its extremal density and the curve family it
/// is extremal for (exactly one of `foliation` / `plane_family` is set).
struct ClosedForm {
  std::string family_id;
  double modulus = 0.0;
  Density extremal;
  std::optional<Foliation> foliation;
  std::optional<PlaneFamily> plane_family;
};

inline const std::vector<std::string>& known_families() {
  static const std::vector<std::string> ids = {"cylinder_horizontal", "rectangle_horizontal", "cylinder_vertical",
                                               "annulus_radial"};
  return ids;
}

/// Families: cylinder_horizontal(a, b), rectangle_horizontal(a, b),
/// cylinder_vertical(a, b), annulus_radial(a).
inline ClosedForm closed_form_modulus(const std::string& family_id, const std::map<std::string, double>& params) {
  auto get = [&](const char* key) {
    auto it = params.find(key);
    if (it == params.end()) throw Error(ErrorCode::InvalidArgument, std::string("missing parameter '") + key + "'");
    if (!(std::isfinite(it->second) && it->second > 0.0))
      throw Error(ErrorCode::InvalidArgument, std::string("parameter '") + key + "' must be positive");
    return it->second;
  };
  const double pi = std::numbers::pi;
  ClosedForm r;
  r.family_id = family_id;
  if (family_id == "cylinder_horizontal") {
    const double a = get("a"), b = get("b");
    r.modulus = 16.0 * pi * b * b * b / (3.0 * a * a * a);
    r.extremal = Density::on_heisenberg([a](const HPoint& p) { return 2.0 * std::abs(p.z()) / a; },
                                        domain::Cylinder{a, b}, 1.0);
    r.foliation = foliation_gamma0(a, b);
  } else if (family_id == "rectangle_horizontal") {
    const double a = get("a"), b = get("b");
    r.modulus = b / a;
    r.extremal = Density::on_plane([a](cplx) { return 1.0 / a; }, domain::PlaneRectangle{a, b});
    r.plane_family = plane_family_horizontal(a, b);
  } else if (family_id == "cylinder_vertical") {
    const double a = get("a"), b = get("b");
    r.modulus = 16.0 * pi * a / (27.0 * b);
    const double c = 2.0 / (3.0 * std::cbrt(b));
    r.extremal = Density::on_heisenberg([c](const HPoint& p) { return c / std::cbrt(std::abs(p.z())); },
                                        domain::Cylinder{a, b}, -1.0 / 3.0);
    r.foliation = foliation_vertical(a, b);
  } else if (family_id == "annulus_radial") {
    const double a = get("a");
    if (!(a > 1.0)) throw Error(ErrorCode::InvalidArgument, "annulus_radial needs a > 1");
    const double la = std::log(a);
    r.modulus = pi * pi / (la * la * la);
    r.extremal = Density::on_heisenberg(
        [la](const HPoint& p) {
          const double u = std::norm(p.z());
          const double den = la * std::sqrt(p.t() * p.t() + u * u);
          return den > 0.0 ? std::sqrt(u) / den : 0.0;
        },
        domain::SphericalAnnulus{1.0, a});
    r.foliation = foliation_from_biholomorphism(builtin_biholomorphism("exp"), 2.0 * la, pi);
  } else {
    throw Error(ErrorCode::UnknownFamily, "no closed form for family '" + family_id + "'");
  }
  return r;
}

/// The domain Psi(S^1 x D) over a plane domain D.
inline DomainDescriptor lifted_domain(const DomainDescriptor& d) {
  if (auto r = std::get_if<domain::PlaneRectangle>(&d)) return domain::Cylinder{r->a, r->b};
  if (auto r = std::get_if<domain::PlaneImage>(&d)) return domain::ChartImage{r->phi, r->a, r->b};
  if (std::holds_alternative<domain::Whole>(d)) return domain::Whole{};
  throw Error(ErrorCode::UnsupportedDomain, "not a plane domain: " + domain_name(d));
}

/// (z, t) -> 2|z| rho(t + i|z|^2). The lifted domain defaults to Psi(S^1 x D).
inline Density pull_back_density(const Density& rho, std::optional<DomainDescriptor> lifted = std::nullopt) {
  if (rho.kind != DensityKind::plane) throw Error(ErrorCode::InvalidArgument, "pull-back needs a plane density");
  auto f = [g = rho.plane](const HPoint& p) { return 2.0 * std::abs(p.z()) * g(project_pi(p).w()); };
  return Density::on_heisenberg(f, lifted ? *lifted : lifted_domain(rho.domain));
}

/// The plane density w -> 1/(2 ln(a) |w|) on the half annulus exp((0, 2 ln a) x (0, pi)).
inline Density annulus_plane_density(double a) {
  const double la = std::log(a);
  return Density::on_plane([la](cplx w) { return 1.0 / (2.0 * la * std::abs(w)); },
                           domain::PlaneImage{builtin_biholomorphism("exp"), 2.0 * la, std::numbers::pi});
}

struct PushForwardValue {
  HPoint image;
  double value;
};

/// (f(p), rho(p) / (|Zf1(p)| - |Zbarf1(p)|)): the push-forward evaluated at f(p).
inline PushForwardValue push_forward_at_image(const Density& rho, const QCMap& f, const HPoint& p,
                                              DerivMode mode = DerivMode::automatic) {
  const auto d = horizontal_derivatives(f, p, mode);
  const double gap = std::abs(d.Zf1) - std::abs(d.Zbarf1);
  if (!(gap > kEpsDeriv)) throw Error(ErrorCode::DegenerateDerivative, "|Zf1| - |Zbarf1| is not positive");
  return {f(p), rho(p) / gap};
}

/// Energy of f_* rho over f(source), transported to the source:
/// integral of (f_* rho)(f(p))^4 J(p, f) dL^3(p).
inline double push_forward_energy(const Density& rho, const QCMap& f, const Grid3& grid = {},
                                  DerivMode mode = DerivMode::automatic) {
  std::optional<double> q;
  if (rho.axis_exponent) q = 4.0 * *rho.axis_exponent;
  return integrate_heis(
      rho.domain, grid,
      [&](const HPoint& p) {
        const auto d = horizontal_derivatives(f, p, mode, true);
        const double a = std::abs(d.Zf1), b = std::abs(d.Zbarf1);
        if (!(a - b > kEpsDeriv)) throw Error(ErrorCode::DegenerateDerivative, "|Zf1| - |Zbarf1| is not positive");
        const double v = rho(p) / (a - b);
        const double j = (a * a - b * b) * (a * a - b * b);
        return v * v * v * v * j;
      },
      q);
}

/// (g(w), rho(w) / (|dg| - |dgbar|)(w)).
inline std::pair<cplx, double> plane_push_forward_at_image(const Density& rho, const PlaneMap& g, cplx w) {
  const auto [A, B] = g.derivatives(w);
  const double gap = std::abs(A) - std::abs(B);
  if (!(gap > kEpsDeriv)) throw Error(ErrorCode::DegenerateDerivative, "|dg| - |dgbar| is not positive");
  return {g(w), rho(w) / gap};
}

/// Max over samples p of the relative gap between Pi^*(g_* rho) and
/// f_*(Pi^* rho), both evaluated at f(p). The left side locates
/// w* = g^{-1}(Pi(f(p))) by Newton seeded at Pi(p).
inline double commutation_residual(const Density& rho, const PlaneMap& g, const QCMap& f,
                                   const std::vector<HPoint>& samples, DerivMode mode = DerivMode::automatic) {
  if (rho.kind != DensityKind::plane) throw Error(ErrorCode::InvalidArgument, "commutation needs a plane density");
  const auto res = num::parallel_map(samples.size(), [&](std::size_t i) {
    const HPoint& p = samples[i];
    const HPoint fp = f(p);
    const cplx w = project_pi(p).w();
    const cplx wstar = invert_plane_map(g, project_pi(fp).w(), w);
    const auto [A, B] = g.derivatives(wstar);
    const double lhs = 2.0 * std::abs(fp.z()) * rho(wstar) / (std::abs(A) - std::abs(B));
    const auto d = horizontal_derivatives(f, p, mode);
    const double rhs = 2.0 * std::abs(p.z()) * rho(w) / (std::abs(d.Zf1) - std::abs(d.Zbarf1));
    const double scale = std::max({std::abs(lhs), std::abs(rhs), std::numeric_limits<double>::min()});
    return std::abs(lhs - rhs) / scale;
  });
  double worst = 0.0;
  for (double r : res) worst = std::max(worst, r);
  return worst;
}

}  // namespace heisqc

#endif  // HEISQC_MODULUS_HPP
