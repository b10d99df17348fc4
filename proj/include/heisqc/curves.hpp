#ifndef HEISQC_CURVES_HPP
#define HEISQC_CURVES_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <numbers>
#include <string>
#include <vector>

#include "heisqc/density.hpp"
#include "heisqc/domain.hpp"
#include "heisqc/error.hpp"
#include "heisqc/heis_core.hpp"
#include "heisqc/holomorphic.hpp"
#include "heisqc/numerics.hpp"

namespace heisqc {

/// A C^1 curve s -> (gamma_1(s), gamma_2(s)) on [s0, s1]. When no analytic
/// velocity is supplied, it is obtained by central differences with step
/// 1e-6 * (s1 - s0), one-sided at the ends.
struct HorizontalCurve {
  double s0 = 0.0;
  double s1 = 1.0;
  std::function<HPoint(double)> position;
  std::function<Tangent(double)> analytic_velocity;

  HPoint operator()(double s) const { return position(s); }

  Tangent velocity(double s) const {
    if (analytic_velocity) return analytic_velocity(s);
    const double h = 1e-6 * (s1 - s0);
    auto diff = [](const HPoint& a, const HPoint& b, double scale) {
      return Tangent((a.z() - b.z()) * scale, (a.t() - b.t()) * scale);
    };
    if (s - h < s0) {
      const HPoint p0 = position(s), p1 = position(s + h), p2 = position(s + 2 * h);
      return Tangent((4.0 * (p1.z() - p0.z()) - (p2.z() - p0.z())) / (2 * h),
                     (4.0 * (p1.t() - p0.t()) - (p2.t() - p0.t())) / (2 * h));
    }
    if (s + h > s1) {
      const HPoint p0 = position(s), p1 = position(s - h), p2 = position(s - 2 * h);
      return Tangent((4.0 * (p0.z() - p1.z()) - (p0.z() - p2.z())) / (2 * h),
                     (4.0 * (p0.t() - p1.t()) - (p0.t() - p2.t())) / (2 * h));
    }
    return diff(position(s + h), position(s - h), 1.0 / (2 * h));
  }
};

/// A C^1 curve in the half-plane.
struct PlaneCurve {
  double s0 = 0.0;
  double s1 = 1.0;
  std::function<cplx(double)> position;
  std::function<cplx(double)> analytic_velocity;

  cplx operator()(double s) const { return position(s); }

  cplx velocity(double s) const {
    if (analytic_velocity) return analytic_velocity(s);
    const double h = 1e-6 * (s1 - s0);
    const double lo = std::max(s0, s - h), hi = std::min(s1, s + h);
    return (position(hi) - position(lo)) / (hi - lo);
  }
};

/// A two-parameter family of horizontal curves indexed by a rectangle of
/// parameters [l1_lo, l1_hi] x [l2_lo, l2_hi].
struct Foliation {
  std::string name;
  std::function<HorizontalCurve(double, double)> generator;
  double l1_lo = 0.0, l1_hi = 1.0;
  double l2_lo = 0.0, l2_hi = 2.0 * std::numbers::pi;

  HorizontalCurve operator()(double l1, double l2) const { return generator(l1, l2); }
};

/// A one-parameter family of plane curves.
struct PlaneFamily {
  std::string name;
  std::function<PlaneCurve(double)> generator;
  double lo = 0.0, hi = 1.0;
};

/// Max over a uniform grid of |gamma_2' + 2 Im(conj(gamma_1) gamma_1')| / max(1, |gamma_1'|).
inline double horizontality_residual(const HorizontalCurve& c, int n_samples) {
  if (n_samples < 2) throw Error(ErrorCode::InvalidArgument, "need at least two samples");
  double worst = 0.0;
  for (int i = 0; i < n_samples; ++i) {
    const double s = c.s0 + (c.s1 - c.s0) * i / (n_samples - 1);
    const HPoint p = c(s);
    const Tangent v = c.velocity(s);
    const double r = std::abs(contact_eval(p, v)) / std::max(1.0, std::abs(v.dz()));
    worst = std::max(worst, r);
  }
  return worst;
}

struct LiftOptions {
  int n_ode = 1000;
  double eps_axis = 1e-9;
};

/// Horizontal lift of a half-plane curve through the angle theta0 at s0:
/// s -> (sqrt(Im c) e^{i tau}, Re c) with tau' = -Re(c') / (2 Im c), tau
/// integrated by fixed-step RK4. The angle between nodes is the cubic Hermite
/// interpolant of (tau, tau'), and the returned velocity is the exact
/// derivative of the returned position.
inline HorizontalCurve lift_halfplane_curve(const PlaneCurve& c, double theta0, const LiftOptions& opts = {}) {
  const int n = std::max(1, opts.n_ode);
  const double h = (c.s1 - c.s0) / n;
  auto rate = [&](double s) {
    const cplx w = c(s);
    if (!(w.imag() >= opts.eps_axis) || !std::isfinite(w.real()))
      throw Error(ErrorCode::DegenerateCurve, "plane curve reaches Im(w) < eps_axis at s = " + std::to_string(s));
    return -c.velocity(s).real() / (2.0 * w.imag());
  };
  std::vector<double> s(n + 1), tau(n + 1), dtau(n + 1);
  s[0] = c.s0;
  tau[0] = theta0;
  dtau[0] = rate(c.s0);
  for (int k = 0; k < n; ++k) {
    // the right side does not depend on tau, so RK4's k2 and k3 coincide
    const double k1 = dtau[k];
    const double k2 = rate(s[k] + 0.5 * h);
    s[k + 1] = (k + 1 == n) ? c.s1 : c.s0 + (k + 1) * h;
    const double k4 = rate(s[k + 1]);
    tau[k + 1] = tau[k] + h / 6.0 * (k1 + 4.0 * k2 + k4);
    dtau[k + 1] = k4;
  }
  auto spline = std::make_shared<const num::HermiteSpline>(std::move(s), std::move(tau), std::move(dtau));

  HorizontalCurve out;
  out.s0 = c.s0;
  out.s1 = c.s1;
  out.position = [c, spline](double sv) {
    const cplx w = c(sv);
    return HPoint(std::polar(std::sqrt(w.imag()), (*spline)(sv)), w.real());
  };
  out.analytic_velocity = [c, spline](double sv) {
    const cplx w = c(sv);
    const cplx dw = c.velocity(sv);
    const double rho = std::sqrt(w.imag());
    const double ang = (*spline)(sv);
    const cplx dz = cplx(dw.imag() / (2.0 * rho), rho * spline->derivative(sv)) * std::polar(1.0, ang);
    return Tangent(dz, dw.real());
  };
  return out;
}

/// Composite Simpson value of the integral of rho(gamma(s)) |gamma_1'(s)| ds.
/// The two end samples are taken a relative 1e-12 inside the interval so that
/// curves starting on the axis can carry densities singular there.
inline double curve_density_integral(const Density& rho, const HorizontalCurve& c, int n_samples) {
  if (rho.kind != DensityKind::heisenberg) throw Error(ErrorCode::InvalidArgument, "expected a Heisenberg density");
  const int n = num::even_intervals(n_samples);
  const auto w = num::simpson_weights(n, c.s0, c.s1);
  auto s = num::linspace(c.s0, c.s1, n);
  const double nudge = 1e-12 * (c.s1 - c.s0);
  s.front() += nudge;
  s.back() -= nudge;
  std::vector<double> terms(w.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const HPoint p = c(s[i]);
    if (!contains(rho.domain, p))
      throw Error(ErrorCode::DomainEscape, "curve sample leaves the density's domain at s = " + std::to_string(s[i]));
    terms[i] = w[i] * rho.heis(p) * std::abs(c.velocity(s[i]).dz());
  }
  return num::pairwise_sum(terms);
}

/// Plane analogue: integral of rho(c(s)) |c'(s)| ds.
inline double plane_curve_integral(const Density& rho, const PlaneCurve& c, int n_samples) {
  if (rho.kind != DensityKind::plane) throw Error(ErrorCode::InvalidArgument, "expected a plane density");
  const int n = num::even_intervals(n_samples);
  const auto w = num::simpson_weights(n, c.s0, c.s1);
  const auto s = num::linspace(c.s0, c.s1, n);
  std::vector<double> terms(w.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const cplx p = c(s[i]);
    if (!contains_plane(rho.domain, p))
      throw Error(ErrorCode::DomainEscape, "plane curve leaves the density's domain");
    terms[i] = w[i] * rho.plane(p) * std::abs(c.velocity(s[i]));
  }
  return num::pairwise_sum(terms);
}

/// Lifts of the horizontal segments of the rectangle (0,a)x(0,b):
/// (r, alpha) -> s -> (r e^{i(alpha - s/(2 r^2))}, s), s in [0, a].
inline Foliation foliation_gamma0(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw Error(ErrorCode::InvalidArgument, "foliation_gamma0 needs a, b > 0");
  Foliation f;
  f.name = "gamma0";
  f.l1_lo = 0.0;
  f.l1_hi = std::sqrt(b);
  f.generator = [a](double r, double alpha) {
    HorizontalCurve c;
    c.s0 = 0.0;
    c.s1 = a;
    const double k = 1.0 / (2.0 * r * r);
    c.position = [r, alpha, k](double s) { return HPoint(std::polar(r, alpha - k * s), s); };
    c.analytic_velocity = [r, alpha, k](double s) {
      return Tangent(cplx(0.0, -k) * std::polar(r, alpha - k * s), 1.0);
    };
    return c;
  };
  return f;
}

/// Horizontal lifts of s -> phi(s + ix), s in [0, a], through the angle alpha:
/// parameters (x, alpha) in (0, b) x [0, 2 pi).
inline Foliation foliation_from_biholomorphism(const Biholomorphism& phi, double a, double b,
                                               const LiftOptions& opts = {}) {
  if (!(a > 0.0) || !(b > 0.0)) throw Error(ErrorCode::InvalidArgument, "rectangle needs a, b > 0");
  Foliation f;
  f.name = "lift:" + phi.name;
  f.l1_lo = 0.0;
  f.l1_hi = b;
  f.generator = [phi, a, opts](double x, double alpha) {
    PlaneCurve pc;
    pc.s0 = 0.0;
    pc.s1 = a;
    pc.position = [phi, x](double s) { return phi(cplx(s, x)); };
    pc.analytic_velocity = [phi, x](double s) { return phi.deriv(cplx(s, x)); };
    return lift_halfplane_curve(pc, alpha, opts);
  };
  return f;
}

/// Radial segments of the cylinder, the lifts of the vertical lines of the
/// rectangle: parameters (theta, t), curve u -> (sqrt(b) u^{3/2} e^{i theta}, t)
/// for u in [0, 1]. The u^{3/2} parameterization keeps line integrals of
/// |z|^{-1/3} densities smooth.
inline Foliation foliation_vertical(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw Error(ErrorCode::InvalidArgument, "foliation_vertical needs a, b > 0");
  Foliation f;
  f.name = "vertical";
  f.l1_lo = 0.0;
  f.l1_hi = 2.0 * std::numbers::pi;
  f.l2_lo = 0.0;
  f.l2_hi = a;
  const double R = std::sqrt(b);
  f.generator = [R](double theta, double t) {
    HorizontalCurve c;
    c.s0 = 0.0;
    c.s1 = 1.0;
    c.position = [R, theta, t](double u) { return HPoint(std::polar(R * u * std::sqrt(u), theta), t); };
    c.analytic_velocity = [R, theta](double u) { return Tangent(std::polar(1.5 * R * std::sqrt(u), theta), 0.0); };
    return c;
  };
  return f;
}

/// Horizontal segments s -> s + iy of the rectangle (0,a)x(0,b), y in (0, b).
inline PlaneFamily plane_family_horizontal(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw Error(ErrorCode::InvalidArgument, "rectangle needs a, b > 0");
  PlaneFamily f;
  f.name = "horizontal_segments";
  f.lo = 0.0;
  f.hi = b;
  f.generator = [a](double y) {
    PlaneCurve c;
    c.s0 = 0.0;
    c.s1 = a;
    c.position = [y](double s) { return cplx(s, y); };
    c.analytic_velocity = [](double) { return cplx(1.0, 0.0); };
    return c;
  };
  return f;
}

/// Images s -> phi(s + ix) of the horizontal segments.
inline PlaneFamily plane_family_image(const Biholomorphism& phi, double a, double b) {
  PlaneFamily f;
  f.name = "image:" + phi.name;
  f.lo = 0.0;
  f.hi = b;
  f.generator = [phi, a](double x) {
    PlaneCurve c;
    c.s0 = 0.0;
    c.s1 = a;
    c.position = [phi, x](double s) { return phi(cplx(s, x)); };
    c.analytic_velocity = [phi, x](double s) { return phi.deriv(cplx(s, x)); };
    return c;
  };
  return f;
}

/// Horizontal lifts of every member of a plane family, through the angle alpha.
inline Foliation lift_family(const PlaneFamily& fam, const LiftOptions& opts = {}) {
  Foliation f;
  f.name = "lift:" + fam.name;
  f.l1_lo = fam.lo;
  f.l1_hi = fam.hi;
  f.generator = [fam, opts](double l, double alpha) { return lift_halfplane_curve(fam.generator(l), alpha, opts); };
  return f;
}

}  // namespace heisqc

#endif  // HEISQC_CURVES_HPP
