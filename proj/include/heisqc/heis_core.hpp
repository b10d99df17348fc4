#ifndef HEISQC_HEIS_CORE_HPP
#define HEISQC_HEIS_CORE_HPP

#include <cmath>
#include <complex>
#include <numbers>

#include "heisqc/error.hpp"

namespace heisqc {

using cplx = std::complex<double>;

namespace detail {
inline bool finite(cplx v) noexcept { return std::isfinite(v.real()) && std::isfinite(v.imag()); }
}  // namespace detail

/// A point (z, t) of the Heisenberg group C x R.
class HPoint {
 public:
  HPoint() = default;
  HPoint(cplx z, double t) : z_(z), t_(t) {
    if (!detail::finite(z) || !std::isfinite(t)) throw Error(ErrorCode::NonFinite, "HPoint component");
  }

  cplx z() const noexcept { return z_; }
  double t() const noexcept { return t_; }

  friend bool operator==(const HPoint&, const HPoint&) = default;

 private:
  cplx z_{0.0, 0.0};
  double t_ = 0.0;
};

/// A point of the Poincare half-plane, Im(w) > 0.
class HalfPlanePoint {
 public:
  explicit HalfPlanePoint(cplx w) : w_(w) {
    if (!detail::finite(w)) throw Error(ErrorCode::NonFinite, "half-plane point");
    if (!(w.imag() > 0.0)) throw Error(ErrorCode::NotInHalfPlane, "Im(w) must be positive");
  }

  cplx w() const noexcept { return w_; }
  double re() const noexcept { return w_.real(); }
  double im() const noexcept { return w_.imag(); }

  friend bool operator==(const HalfPlanePoint&, const HalfPlanePoint&) = default;

 private:
  cplx w_;
};

/// Tangent vector (dz, dt) at some HPoint.
class Tangent {
 public:
  Tangent() = default;
  Tangent(cplx dz, double dt) : dz_(dz), dt_(dt) {
    if (!detail::finite(dz) || !std::isfinite(dt)) throw Error(ErrorCode::NonFinite, "Tangent component");
  }

  cplx dz() const noexcept { return dz_; }
  double dt() const noexcept { return dt_; }

 private:
  cplx dz_{0.0, 0.0};
  double dt_ = 0.0;
};

inline HPoint group_mul(const HPoint& p, const HPoint& q) {
  return {p.z() + q.z(), p.t() + q.t() + 2.0 * std::imag(p.z() * std::conj(q.z()))};
}

inline HPoint group_inv(const HPoint& p) { return {-p.z(), -p.t()}; }

/// Koranyi gauge (|z|^4 + t^2)^(1/4).
inline double heis_norm(const HPoint& p) {
  const double r2 = std::norm(p.z());
  return std::sqrt(std::sqrt(r2 * r2 + p.t() * p.t()));
}

/// Left-invariant gauge distance ||p^-1 * q||.
inline double heis_dist(const HPoint& p, const HPoint& q) { return heis_norm(group_mul(group_inv(p), q)); }

/// The projection (z, t) -> t + i|z|^2 onto the half-plane; undefined on the axis.
inline HalfPlanePoint project_pi(const HPoint& p) {
  const double r2 = std::norm(p.z());
  if (r2 == 0.0) throw Error(ErrorCode::AxisPoint, "projection undefined on the vertical axis");
  return HalfPlanePoint(cplx(p.t(), r2));
}

struct ChartCoords {
  double theta;
  HalfPlanePoint w;
};

/// (e^{i theta}, w) -> (sqrt(Im w) e^{i theta}, Re w). Theta is used as given.
inline HPoint chart_to_heis(double theta, const HalfPlanePoint& w) {
  return {std::polar(std::sqrt(w.im()), theta), w.re()};
}

/// Inverse chart; theta is normalized to [0, 2 pi).
inline ChartCoords chart_from_heis(const HPoint& p) {
  const HalfPlanePoint w = project_pi(p);
  double theta = std::arg(p.z());
  if (theta < 0.0) theta += 2.0 * std::numbers::pi;
  if (theta >= 2.0 * std::numbers::pi) theta = 0.0;
  return {theta, w};
}

/// The contact form dt - i conj(z) dz + i z d conj(z) applied to v at p.
inline double contact_eval(const HPoint& p, const Tangent& v) {
  return v.dt() + 2.0 * std::imag(std::conj(p.z()) * v.dz());
}

}  // namespace heisqc

#endif  // HEISQC_HEIS_CORE_HPP
