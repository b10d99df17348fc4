#ifndef HEISQC_QCMAPS_HPP
#define HEISQC_QCMAPS_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <string>

#include "heisqc/density.hpp"
#include "heisqc/domain.hpp"
#include "heisqc/error.hpp"
#include "heisqc/heis_core.hpp"

namespace heisqc {

struct HorizontalDerivs {
  cplx Zf1;
  cplx Zbarf1;
};

/// A map f = (f1, f2) between Heisenberg domains. `analytic` supplies
/// (Zf1, Zbarf1) in closed form; when empty, derivatives are taken by central
/// differences with step h_fd (0 selects 1e-5 * source scale).
struct QCMap {
  std::string name = "custom";
  std::function<HPoint(const HPoint&)> eval;
  std::function<HorizontalDerivs(const HPoint&)> analytic;
  DomainDescriptor source = domain::Whole{};
  DomainDescriptor target = domain::Whole{};
  double h_fd = 0.0;

  HPoint operator()(const HPoint& p) const { return eval(p); }
  cplx f1(const HPoint& p) const { return eval(p).z(); }
  double f2(const HPoint& p) const { return eval(p).t(); }
  double step() const { return h_fd > 0.0 ? h_fd : 1e-5 * domain_scale(source); }
};

enum class DerivMode { automatic, analytic, numeric };

inline constexpr double kEpsDeriv = 1e-12;

namespace detail {

inline void require_stencil(const QCMap& f, const HPoint& p, double h) {
  const HPoint probes[] = {HPoint(p.z() + h, p.t()), HPoint(p.z() - h, p.t()), HPoint(p.z() + cplx(0, h), p.t()),
                           HPoint(p.z() - cplx(0, h), p.t()), HPoint(p.z(), p.t() + h), HPoint(p.z(), p.t() - h)};
  for (const auto& q : probes)
    if (!contains(f.source, q, 0.0)) throw Error(ErrorCode::BoundaryTooClose, "difference stencil leaves the source");
}


// Relative slack for stencil points: tangential steps at a curved boundary
// overshoot by O(h^2).
inline constexpr double kStencilSlack = 1e-9;

// Derivative of f1 along `dir` at p: centred when p +- h dir lie in the source,
// otherwise (if allowed) the second-order one-sided quotient.
inline cplx directional(const QCMap& f, const HPoint& p, cplx dz, double dt, double h, bool one_sided) {
  auto at = [&](double k) { return HPoint(p.z() + k * h * dz, p.t() + k * h * dt); };
  auto inside = [&](double k) { return contains(f.source, at(k), one_sided ? kStencilSlack : 0.0); };
  if (inside(1) && inside(-1)) return (f.f1(at(1)) - f.f1(at(-1))) / (2 * h);
  if (one_sided) {
    for (double sgn : {1.0, -1.0})
      if (inside(sgn) && inside(2 * sgn))
        return sgn * (-3.0 * f.f1(p) + 4.0 * f.f1(at(sgn)) - f.f1(at(2 * sgn))) / (2 * h);
  }
  throw Error(ErrorCode::BoundaryTooClose, "difference stencil leaves the source");
}

}  // namespace detail

/// Zf1 = d_z f1 + i conj(z) d_t f1 and Zbarf1 = d_zbar f1 - i z d_t f1. With
/// `one_sided`, numeric mode falls back to one-sided differences at the
/// boundary of the source instead of throwing BoundaryTooClose.
inline HorizontalDerivs horizontal_derivatives(const QCMap& f, const HPoint& p, DerivMode mode = DerivMode::automatic,
                                               bool one_sided = false) {
  if (mode == DerivMode::analytic && !f.analytic)
    throw Error(ErrorCode::InvalidArgument, "map has no analytic derivatives");
  if (mode != DerivMode::numeric && f.analytic) return f.analytic(p);
  const double h = f.step();
  const cplx dx = detail::directional(f, p, 1.0, 0.0, h, one_sided);
  const cplx dy = detail::directional(f, p, cplx(0.0, 1.0), 0.0, h, one_sided);
  const cplx dt = detail::directional(f, p, 0.0, 1.0, h, one_sided);
  const cplx I(0.0, 1.0);
  const cplx z = p.z();
  const cplx dz = 0.5 * (dx - I * dy);
  const cplx dzbar = 0.5 * (dx + I * dy);
  return {dz + I * std::conj(z) * dt, dzbar - I * z * dt};
}

/// mu = Zbarf1 / Zf1.
inline cplx beltrami(const QCMap& f, const HPoint& p, DerivMode mode = DerivMode::automatic) {
  const auto d = horizontal_derivatives(f, p, mode);
  if (!(std::abs(d.Zf1) > kEpsDeriv)) throw Error(ErrorCode::DegenerateDerivative, "Zf1 vanishes");
  return d.Zbarf1 / d.Zf1;
}

inline double distortion_from(const HorizontalDerivs& d) {
  const double a = std::abs(d.Zf1), b = std::abs(d.Zbarf1);
  if (!(a - b > kEpsDeriv)) throw Error(ErrorCode::DegenerateDerivative, "|Zf1| - |Zbarf1| is not positive");
  return (a + b) / (a - b);
}

/// K(p, f) = (|Zf1| + |Zbarf1|) / (|Zf1| - |Zbarf1|).
inline double distortion_K(const QCMap& f, const HPoint& p, DerivMode mode = DerivMode::automatic) {
  return distortion_from(horizontal_derivatives(f, p, mode));
}

/// J(p, f) = (|Zf1|^2 - |Zbarf1|^2)^2.
inline double jacobian(const QCMap& f, const HPoint& p, DerivMode mode = DerivMode::automatic) {
  const auto d = horizontal_derivatives(f, p, mode);
  const double v = std::norm(d.Zf1) - std::norm(d.Zbarf1);
  return v * v;
}

/// Pushes the horizontal vectors (dz, -2 Im(conj(z) dz)), dz in {1, i}, through
/// the difference quotient of f and returns max |omega_{f(p)}(df v)| / |df v|.
inline double contact_residual(const QCMap& f, const HPoint& p) {
  const double h = f.step();
  detail::require_stencil(f, p, h);
  const HPoint fp = f(p);
  double worst = 0.0;
  for (cplx dz : {cplx(1.0, 0.0), cplx(0.0, 1.0)}) {
    const double dt = -2.0 * std::imag(std::conj(p.z()) * dz);
    const HPoint plus = f(HPoint(p.z() + h * dz, p.t() + h * dt));
    const HPoint minus = f(HPoint(p.z() - h * dz, p.t() - h * dt));
    const Tangent v((plus.z() - minus.z()) / (2 * h), (plus.t() - minus.t()) / (2 * h));
    const double len = std::sqrt(std::norm(v.dz()) + v.dt() * v.dt());
    if (len == 0.0) throw Error(ErrorCode::DegenerateDerivative, "differential annihilates a horizontal vector");
    worst = std::max(worst, std::abs(contact_eval(fp, v)) / len);
  }
  return worst;
}

/// Integral over the density's domain of K(., f)^2 rho^4.
inline double mean_distortion(const QCMap& f, const Density& rho, const Grid3& grid = {},
                              DerivMode mode = DerivMode::automatic) {
  if (rho.kind != DensityKind::heisenberg) throw Error(ErrorCode::InvalidArgument, "expected a Heisenberg density");
  std::optional<double> q;
  if (rho.axis_exponent) q = 4.0 * *rho.axis_exponent;
  return integrate_heis(
      rho.domain, grid,
      [&](const HPoint& p) {
        const double v = rho.heis(p);
        const double k = distortion_from(horizontal_derivatives(f, p, mode, true));
        return k * k * v * v * v * v;
      },
      q);
}

inline QCMap identity_map(DomainDescriptor d = domain::Whole{}) {
  QCMap f;
  f.name = "identity";
  f.eval = [](const HPoint& p) { return p; };
  f.analytic = [](const HPoint&) { return HorizontalDerivs{cplx(1.0, 0.0), cplx(0.0, 0.0)}; };
  f.source = d;
  f.target = d;
  return f;
}

/// (z, t) -> (e^{i alpha} z, t).
inline QCMap rotation_map(double alpha, DomainDescriptor d = domain::Whole{}) {
  QCMap f;
  f.name = "rotation";
  const cplx e = std::polar(1.0, alpha);
  f.eval = [e](const HPoint& p) { return HPoint(e * p.z(), p.t()); };
  f.analytic = [e](const HPoint&) { return HorizontalDerivs{e, cplx(0.0, 0.0)}; };
  f.source = d;
  f.target = d;
  return f;
}

/// q * f: left translation after f. Zf1 and Zbarf1 are unchanged.
inline QCMap left_translate(const QCMap& f, const HPoint& q) {
  QCMap g = f;
  g.name = f.name + "+translate";
  g.eval = [inner = f.eval, q](const HPoint& p) { return group_mul(q, inner(p)); };
  g.target = domain::Whole{};
  return g;
}

/// The extremal map between the cylinders C_{a,b} and C_{a',b'}:
/// f1 = sqrt(b') e^{i alpha} z e^{i kappa t} (A|z|^2 + B)^{-1/2}, f2 = (a'/a) t,
/// kappa = (1 - a'b/(ab')) / (2b), A = 1 - ab'/(a'b), B = ab'/a'.
inline QCMap cylinder_extremal_map(double a, double b, double a_p, double b_p, double alpha) {
  for (double v : {a, b, a_p, b_p})
    if (!(std::isfinite(v) && v > 0.0)) throw Error(ErrorCode::BadModuli, "moduli must be positive");
  const double ratio = a * b_p / (a_p * b);
  if (!(ratio > 1.0)) throw Error(ErrorCode::BadModuli, "requires ab'/(a'b) > 1, got " + std::to_string(ratio));
  const double kappa = (1.0 - a_p * b / (a * b_p)) / (2.0 * b);
  const double A = 1.0 - ratio;
  const double B = a * b_p / a_p;
  const cplx c = std::sqrt(b_p) * std::polar(1.0, alpha);
  const double tscale = a_p / a;

  QCMap f;
  f.name = "cylinder";
  f.eval = [=](const HPoint& p) {
    const double u = std::norm(p.z());
    return HPoint(c * p.z() * std::polar(1.0, kappa * p.t()) / std::sqrt(A * u + B), tscale * p.t());
  };
  f.analytic = [=](const HPoint& p) {
    const double u = std::norm(p.z());
    const double D = A * u + B;
    const cplx pre = c * std::polar(1.0, kappa * p.t()) / (D * std::sqrt(D));
    return HorizontalDerivs{pre * (0.5 * A * u + B - kappa * u * D), pre * p.z() * p.z() * (kappa * D - 0.5 * A)};
  };
  f.source = domain::Cylinder{a, b};
  f.target = domain::Cylinder{a_p, b_p};
  return f;
}

/// The map between the spherical annuli {1 < |p| < a} and {1 < |p| < a^k}:
/// f1 = sqrt(k) z ((t - i|z|^2)/(t - ik|z|^2))^{1/2} |t + i|z|^2|^{(k-1)/2},
/// f2 = t |t + i|z|^2|^k / |t + ik|z|^2|, and (0, t) -> (0, t|t|^{k-1}) on the axis.
inline QCMap spherical_annuli_map(double a, double k) {
  if (!(a > 1.0) || !(k > 0.0 && k < 1.0)) throw Error(ErrorCode::BadModuli, "requires a > 1 and 0 < k < 1");
  QCMap f;
  f.name = "annuli";
  f.eval = [k](const HPoint& p) {
    const double u = std::norm(p.z());
    const double t = p.t();
    if (u == 0.0) return HPoint(cplx(0.0, 0.0), t * std::pow(std::abs(t), k - 1.0));
    const cplx w(t, u);
    const cplx wk(t, k * u);
    const double m = std::abs(w);
    const cplx f1 = std::sqrt(k) * p.z() * std::sqrt(std::conj(w) / std::conj(wk)) * std::pow(m, 0.5 * (k - 1.0));
    return HPoint(f1, t * std::pow(m, k) / std::abs(wk));
  };
  f.source = domain::SphericalAnnulus{1.0, a};
  f.target = domain::SphericalAnnulus{1.0, std::pow(a, k)};
  return f;
}

/// A half-plane map with optional analytic d/dw and d/dwbar derivatives.
struct PlaneMap {
  std::string name = "custom";
  std::function<cplx(cplx)> g;
  std::function<cplx(cplx)> dg;
  std::function<cplx(cplx)> dgbar;

  cplx operator()(cplx w) const { return g(w); }

  std::pair<cplx, cplx> derivatives(cplx w) const {
    if (dg && dgbar) return {dg(w), dgbar(w)};
    const double h = 1e-6 * std::max(1.0, std::abs(w));
    const cplx gx = (g(w + h) - g(w - h)) / (2 * h);
    const cplx gy = (g(w + cplx(0, h)) - g(w - cplx(0, h))) / (2 * h);
    const cplx I(0.0, 1.0);
    return {0.5 * (gx - I * gy), 0.5 * (gx + I * gy)};
  }
};

/// Solves g(w) = target by Newton on the real 2x2 system, seeded at `seed`.
inline cplx invert_plane_map(const PlaneMap& g, cplx target, cplx seed) {
  cplx w = seed;
  cplx r = g(w) - target;
  for (int it = 0; it < 60 && std::abs(r) > 1e-15 * (1.0 + std::abs(target)); ++it) {
    const auto [A, B] = g.derivatives(w);
    const double det = std::norm(A) - std::norm(B);
    if (!(std::abs(det) > 0.0)) throw Error(ErrorCode::DegenerateDerivative, "singular plane map");
    const cplx dw = (std::conj(A) * r - B * std::conj(r)) / det;
    w -= dw;
    r = g(w) - target;
    if (std::abs(dw) <= 1e-16 * (1.0 + std::abs(w))) break;
  }
  if (!(std::abs(r) <= 1e-10 * (1.0 + std::abs(target))))
    throw Error(ErrorCode::ChartInversion, "plane map inversion did not converge");
  return w;
}

struct ProfileFn {
  std::function<double(double)> value;
  std::function<double(double)> slope;  // optional
};

/// f(x + iy) = (a'/a) x + i varphi(y), after a sampled check of varphi(0) = 0,
/// varphi(b) = b' and varphi' >= a'/a.
inline PlaneMap plane_minimizer_gphi(double a, double b, double a_p, double b_p, const ProfileFn& profile,
                                     double tol = 1e-6) {
  for (double v : {a, b, a_p, b_p})
    if (!(std::isfinite(v) && v > 0.0)) throw Error(ErrorCode::BadModuli, "moduli must be positive");
  auto slope = profile.slope;
  if (!slope) {
    slope = [v = profile.value, b](double y) {
      const double h = 1e-6 * b;
      const double lo = std::max(0.0, y - h), hi = std::min(b, y + h);
      return (v(hi) - v(lo)) / (hi - lo);
    };
  }
  const double k = a_p / a;
  if (std::abs(profile.value(0.0)) > tol * b_p || std::abs(profile.value(b) - b_p) > tol * b_p)
    throw Error(ErrorCode::BadProfile, "profile must satisfy varphi(0) = 0 and varphi(b) = b'");
  for (int i = 0; i <= 256; ++i) {
    const double y = b * i / 256.0;
    if (slope(y) < k - tol) throw Error(ErrorCode::BadProfile, "profile slope below a'/a at y = " + std::to_string(y));
  }
  PlaneMap m;
  m.name = "gphi";
  m.g = [k, v = profile.value](cplx w) { return cplx(k * w.real(), v(w.imag())); };
  m.dg = [k, slope](cplx w) { return cplx(0.5 * (k + slope(w.imag())), 0.0); };
  m.dgbar = [k, slope](cplx w) { return cplx(0.5 * (k - slope(w.imag())), 0.0); };
  return m;
}

/// The profile of the cylinder map: varphi(x) = b'x/(Ax + B), A, B as above.
inline ProfileFn cylinder_extremal_profile(double a, double b, double a_p, double b_p) {
  for (double v : {a, b, a_p, b_p})
    if (!(std::isfinite(v) && v > 0.0)) throw Error(ErrorCode::BadModuli, "moduli must be positive");
  const double A = 1.0 - a * b_p / (a_p * b), B = a * b_p / a_p;
  return {[=](double x) { return b_p * x / (A * x + B); },
          [=](double x) { return b_p * B / ((A * x + B) * (A * x + B)); }};
}

/// Projection of the spherical annuli map: w -> |w|^k (t + iku)/|t + iku|, w = t + iu.
inline PlaneMap annuli_plane_map(double k) {
  if (!(k > 0.0 && k < 1.0)) throw Error(ErrorCode::BadModuli, "requires 0 < k < 1");
  PlaneMap m;
  m.name = "annuli";
  m.g = [k](cplx w) {
    const cplx v(w.real(), k * w.imag());
    return std::pow(std::abs(w), k) * v / std::abs(v);
  };
  return m;
}

}  // namespace heisqc

#endif  // HEISQC_QCMAPS_HPP
