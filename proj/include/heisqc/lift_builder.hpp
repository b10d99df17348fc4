#ifndef HEISQC_LIFT_BUILDER_HPP
#define HEISQC_LIFT_BUILDER_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <string>
#include <vector>

#include "heisqc/domain.hpp"
#include "heisqc/error.hpp"
#include "heisqc/heis_core.hpp"
#include "heisqc/holomorphic.hpp"
#include "heisqc/numerics.hpp"
#include "heisqc/qcmaps.hpp"

namespace heisqc {

inline constexpr double kTolCompat = 1e-6;
inline constexpr double kTolMixed = 1e-5;

struct OdeOptions {
  int n_steps = 2000;
  double tol_bvp = 1e-5;
  double tol_slope = 1e-6;
};

/// Source rectangle (0,a)x(0,b) mapped by phi, target (0,a')x(0,b') mapped by psi.
struct LiftProblem {
  double a = 1.0, b = 1.0, a_p = 1.0, b_p = 1.0;
  Biholomorphism phi = builtin_biholomorphism("identity");
  Biholomorphism psi = builtin_biholomorphism("identity");
  OdeOptions ode;

  void validate() const {
    for (double v : {a, b, a_p, b_p})
      if (!(std::isfinite(v) && v > 0.0)) throw Error(ErrorCode::InvalidArgument, "rectangle sides must be positive");
    if (!phi.eval || !phi.deriv || !psi.eval || !psi.deriv)
      throw Error(ErrorCode::InvalidArgument, "biholomorphisms need evaluator and derivative");
    if (ode.n_steps < 4) throw Error(ErrorCode::InvalidArgument, "n_steps must be at least 4");
  }
};

struct CompatibilityReport {
  bool ok = false;
  double max_s_variation = 0.0;
};

/// q(s, x) = |phi'(s + ix)| / Im phi(s + ix) on an interior n x n grid; reports
/// max over x of (max_s q - min_s q) / mean_s q.
inline CompatibilityReport compatibility_check(const Biholomorphism& phi, double a, double b, int n = 32,
                                               double tol = kTolCompat) {
  CompatibilityReport r;
  for (int j = 0; j < n; ++j) {
    const double x = b * (j + 0.5) / n;
    double lo = std::numeric_limits<double>::infinity(), hi = -lo, sum = 0.0;
    for (int i = 0; i < n; ++i) {
      const cplx w(a * (i + 0.5) / n, x);
      const double im = phi(w).imag();
      if (!(im > 0.0)) return {false, std::numeric_limits<double>::infinity()};
      const double q = std::abs(phi.deriv(w)) / im;
      lo = std::min(lo, q);
      hi = std::max(hi, q);
      sum += q;
    }
    r.max_s_variation = std::max(r.max_s_variation, (hi - lo) / (sum / n));
  }
  r.ok = r.max_s_variation <= tol;
  return r;
}

/// One solution of the profile ODE through (b/2, anchor), on a grid that
/// clusters nodes geometrically at both ends.
struct Trajectory {
  double anchor = 0.0;
  std::vector<double> x, v, slope;  // ascending, interior nodes only
  double left = 0.0, right = 0.0;   // linear extrapolation to x = 0 and x = b
  bool blew_up = false;
  double min_slope_margin = -std::numeric_limits<double>::infinity();  // min slope - a'/a
};

namespace detail {

class ProfileOde {
 public:
  explicit ProfileOde(const LiftProblem& prob) : prob_(prob) {
    prob.validate();
    m_ = std::max(2, prob.ode.n_steps);  // RK4 steps in each direction from the anchor
    // logistic grid x = b / (1 + e^{-L(sigma - 1/2)}) on [eps, b - eps]: uniform
    // in log x near both ends, where the right side behaves like v/x
    const double eps = 1e-6;  // endpoint cut, relative to b
    const double L = 2.0 * std::log(1.0 / eps - 1.0);
    dsig_ = 0.5 / m_;
    // phi-side factor (a/a') |phi'|^2 / Im(phi)^2 on every half node
    const int nh = 4 * m_ + 1;
    xh_.resize(nh);
    dxh_.resize(nh);
    ph_.resize(nh);
    const double s0 = 0.5 * prob.a;
    for (int k = 0; k < nh; ++k) {
      const double sig = 0.5 * dsig_ * k;
      xh_[k] = k == 2 * m_ ? 0.5 * prob.b : prob.b / (1.0 + std::exp(-L * (sig - 0.5)));
      dxh_[k] = L * xh_[k] * (prob.b - xh_[k]) / prob.b;
      const cplx w(s0, xh_[k]);
      const double im = prob.phi(w).imag();
      ph_[k] = (prob.a / prob.a_p) * std::norm(prob.phi.deriv(w)) / (im * im);
    }
  }

  // psi-side factor Im(psi)^2 / |psi'|^2 at S0' + iv
  double q(double v) const {
    const cplx w(0.5 * prob_.a_p, v);
    const double im = prob_.psi(w).imag();
    return im * im / std::norm(prob_.psi.deriv(w));
  }

  Trajectory solve(double anchor) const {
    Trajectory tr;
    tr.anchor = anchor;
    const int n = 2 * m_;
    std::vector<double> v(n + 1, std::numeric_limits<double>::quiet_NaN());
    v[m_] = anchor;
    const double cap = 1e6 * std::max(1.0, prob_.b_p);
    auto G = [&](int k, double val) { return ph_[k] * q(val) * dxh_[k]; };
    double blow_sign = 0.0;
    // node i sits at half index 2i
    for (int dir : {+1, -1}) {
      for (int i = m_; i != (dir > 0 ? n : 0); i += dir) {
        const double h = dir * dsig_;
        const int k0 = 2 * i, k1 = 2 * i + dir, k2 = 2 * i + 2 * dir;
        const double y = v[i];
        const double g1 = G(k0, y);
        const double g2 = G(k1, y + 0.5 * h * g1);
        const double g3 = G(k1, y + 0.5 * h * g2);
        const double g4 = G(k2, y + h * g3);
        const double next = y + h / 6.0 * (g1 + 2.0 * g2 + 2.0 * g3 + g4);
        if (!std::isfinite(next) || std::abs(next) > cap) {
          tr.blew_up = true;
          blow_sign = std::isfinite(next) ? (next > 0 ? 1.0 : -1.0) : (y >= 0 ? 1.0 : -1.0);
          if (dir > 0) {
            tr.right = blow_sign * std::numeric_limits<double>::infinity();
          } else {
            tr.left = blow_sign * std::numeric_limits<double>::infinity();
          }
          break;
        }
        v[i + dir] = next;
      }
    }
    if (tr.blew_up) {
      if (std::isfinite(v[0])) tr.left = extrapolate(v, 0, 1, 0.0);
      if (std::isfinite(v[n])) tr.right = extrapolate(v, n, n - 1, prob_.b);
      return tr;
    }
    tr.left = extrapolate(v, 0, 1, 0.0);
    tr.right = extrapolate(v, n, n - 1, prob_.b);
    tr.x.resize(n + 1);
    tr.slope.resize(n + 1);
    double min_slope = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= n; ++i) {
      tr.x[i] = xh_[2 * i];
      tr.slope[i] = ph_[2 * i] * q(v[i]);
      min_slope = std::min(min_slope, tr.slope[i]);
    }
    tr.v = std::move(v);
    tr.min_slope_margin = min_slope - prob_.a_p / prob_.a;
    return tr;
  }

 private:
  double extrapolate(const std::vector<double>& v, int i0, int i1, double target) const {
    const double x0 = xh_[2 * i0], x1 = xh_[2 * i1];
    return v[i0] + (target - x0) * (v[i1] - v[i0]) / (x1 - x0);
  }

  LiftProblem prob_;
  int m_ = 0;
  double dsig_ = 0.0;
  std::vector<double> xh_, dxh_, ph_;
};

inline void require_compatible(const LiftProblem& prob) {
  const auto cp = compatibility_check(prob.phi, prob.a, prob.b);
  const auto cq = compatibility_check(prob.psi, prob.a_p, prob.b_p);
  if (!cp.ok || !cq.ok)
    throw Error(ErrorCode::Incompatible, "|f'|/Im f depends on s (variation phi " + std::to_string(cp.max_s_variation) +
                                             ", psi " + std::to_string(cq.max_s_variation) + ")");
}

}  // namespace detail

/// Integrates the profile ODE through (b/2, anchor) in both directions.
inline Trajectory profile_trajectory(const LiftProblem& prob, double anchor) {
  return detail::ProfileOde(prob).solve(anchor);
}

/// Solution varphi of the boundary profile problem, as a C^1 Hermite spline on [0, b].
struct Profile {
  num::HermiteSpline spline;
  double anchor = 0.0;
  double min_slope_margin = 0.0;
  double left_mismatch = 0.0;   // varphi(0)
  double right_mismatch = 0.0;  // varphi(b) - b'

  double operator()(double x) const { return spline(x); }
  double slope(double x) const { return spline.derivative(x); }
  double b() const { return spline.hi(); }
};

namespace detail {

inline Profile profile_from(const Trajectory& tr, double b, double b_p) {
  const std::size_t n = tr.x.size();
  std::vector<double> x, v, d;
  x.reserve(n + 2);
  v.reserve(n + 2);
  d.reserve(n + 2);
  auto end_slope = [&](std::size_t i0, std::size_t i1, double xe) {
    return tr.slope[i0] + (xe - tr.x[i0]) * (tr.slope[i1] - tr.slope[i0]) / (tr.x[i1] - tr.x[i0]);
  };
  // the boundary values are pinned; the extrapolation mismatch is recorded
  x.push_back(0.0);
  v.push_back(0.0);
  d.push_back(end_slope(0, 1, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    x.push_back(tr.x[i]);
    v.push_back(tr.v[i]);
    d.push_back(tr.slope[i]);
  }
  x.push_back(b);
  v.push_back(b_p);
  d.push_back(end_slope(n - 1, n - 2, b));
  Profile p;
  p.spline = num::HermiteSpline(std::move(x), std::move(v), std::move(d));
  p.anchor = tr.anchor;
  p.min_slope_margin = tr.min_slope_margin;
  p.left_mismatch = tr.left;
  p.right_mismatch = tr.right - b_p;
  return p;
}

// Interval {c in [lo, hi] : |F(c)| <= tol} of a nondecreasing F, or empty.
template <class F>
std::pair<double, double> tolerance_window(F&& f, double lo, double hi, double tol, bool& empty) {
  empty = false;
  const double f_lo = f(lo), f_hi = f(hi);
  if (f_lo > tol || f_hi < -tol) {
    empty = true;
    return {lo, hi};
  }
  auto bisect = [&](auto pred, double a, double b) {  // pred(a) false, pred(b) true
    for (int it = 0; it < 200 && b - a > 1e-15 * std::max(1.0, std::abs(b)); ++it) {
      const double m = 0.5 * (a + b);
      (pred(m) ? b : a) = m;
    }
    return std::pair{a, b};
  };
  const double c_lo = f_lo >= -tol ? lo : bisect([&](double c) { return f(c) >= -tol; }, lo, hi).second;
  const double c_hi = f_hi <= tol ? hi : bisect([&](double c) { return f(c) > tol; }, lo, hi).first;
  if (c_lo > c_hi) empty = true;
  return {c_lo, c_hi};
}

}  // namespace detail

/// Solves varphi' = (a/a') |phi'|^2 Im(psi)^2 / (Im(phi)^2 |psi'|^2), with phi
/// at a/2 + ix and psi at a'/2 + i varphi, subject to varphi(0) = 0,
/// varphi(b) = b' and varphi' >= a'/a. Shooting from the anchor x = b/2: the
/// anchors meeting both boundary conditions form an interval (trajectories do
/// not cross), inside which the slope-feasible anchors are located by a scan;
/// the centre of the feasible run is returned.
inline Profile profile_ode_solve(const LiftProblem& prob) {
  prob.validate();
  detail::require_compatible(prob);
  const detail::ProfileOde ode(prob);
  const double tol = prob.ode.tol_bvp;
  const double lo = 1e-9 * prob.b_p, hi = prob.b_p * (1.0 - 1e-9);

  bool empty_l = false, empty_r = false;
  const auto wl = detail::tolerance_window([&](double c) { return ode.solve(c).left; }, lo, hi, tol, empty_l);
  const auto wr =
      detail::tolerance_window([&](double c) { return ode.solve(c).right - prob.b_p; }, lo, hi, tol, empty_r);
  const double c_lo = std::max(wl.first, wr.first), c_hi = std::min(wl.second, wr.second);
  if (empty_l || empty_r || c_lo > c_hi) {
    // report the best compromise between the two boundary conditions
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 64; ++i) {
      const auto tr = ode.solve(lo + (hi - lo) * i / 64.0);
      best = std::min(best, std::max(std::abs(tr.left), std::abs(tr.right - prob.b_p)));
    }
    throw Error(ErrorCode::NoSolution,
                "no anchor meets both boundary conditions; smallest boundary mismatch " + std::to_string(best));
  }

  const double tol_s = prob.ode.tol_slope;
  auto margin = [&](double c) { return ode.solve(c).min_slope_margin; };
  auto feasible = [&](double c) { return margin(c) >= -tol_s; };
  auto edge = [&](double in, double out) {  // in feasible, out not
    for (int it = 0; it < 200 && std::abs(out - in) > 1e-15 * std::max(1.0, std::abs(in)); ++it) {
      const double m = 0.5 * (in + out);
      (feasible(m) ? in : out) = m;
    }
    return in;
  };

  constexpr int kScan = 33;
  std::vector<double> cs(kScan), ms(kScan);
  for (int i = 0; i < kScan; ++i) {
    cs[i] = c_lo + (c_hi - c_lo) * i / (kScan - 1);
    ms[i] = margin(cs[i]);
  }
  std::vector<std::pair<int, int>> runs;
  for (int i = 0; i < kScan; ++i) {
    if (ms[i] < -tol_s) continue;
    if (!runs.empty() && runs.back().second == i - 1) {
      runs.back().second = i;
    } else {
      runs.emplace_back(i, i);
    }
  }
  if (runs.size() > 1)
    throw Error(ErrorCode::NonUnique, std::to_string(runs.size()) + " separated anchor ranges satisfy the constraints");

  double left_edge, right_edge;
  if (runs.size() == 1) {
    const auto [i0, i1] = runs.front();
    left_edge = i0 > 0 ? edge(cs[i0], cs[i0 - 1]) : cs[0];
    right_edge = i1 < kScan - 1 ? edge(cs[i1], cs[i1 + 1]) : cs[kScan - 1];
  } else {
    // a feasible run narrower than the scan spacing: golden-section on the margin
    const int ib = static_cast<int>(std::max_element(ms.begin(), ms.end()) - ms.begin());
    double a = cs[std::max(0, ib - 1)], b = cs[std::min(kScan - 1, ib + 1)];
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double m1 = margin(x1), m2 = margin(x2);
    double found = std::numeric_limits<double>::quiet_NaN();
    for (int it = 0; it < 200 && b - a > 1e-15 * std::max(1.0, std::abs(b)); ++it) {
      if (m1 >= -tol_s) {
        found = x1;
        break;
      }
      if (m2 >= -tol_s) {
        found = x2;
        break;
      }
      if (m1 > m2) {
        b = x2;
        x2 = x1;
        m2 = m1;
        x1 = b - gr * (b - a);
        m1 = margin(x1);
      } else {
        a = x1;
        x1 = x2;
        m1 = m2;
        x2 = a + gr * (b - a);
        m2 = margin(x2);
      }
    }
    if (std::isnan(found))
      throw Error(ErrorCode::NoSolution, "boundary conditions hold but the slope constraint varphi' >= a'/a fails");
    const double lo_b = cs[std::max(0, ib - 1)], hi_b = cs[std::min(kScan - 1, ib + 1)];
    left_edge = feasible(lo_b) ? lo_b : edge(found, lo_b);
    right_edge = feasible(hi_b) ? hi_b : edge(found, hi_b);
  }
  const double anchor = 0.5 * (left_edge + right_edge);
  const Trajectory tr = ode.solve(anchor);
  if (tr.blew_up || tr.min_slope_margin < -tol_s)
    throw Error(ErrorCode::NoSolution, "selected anchor violates the slope constraint");
  return detail::profile_from(tr, prob.b, prob.b_p);
}

/// Grid sizes for the angular potential: n_s intervals in s, n_x cell-centred
/// nodes in x (odd, so that the middle node is x = b/2).
struct PotentialGrid {
  int n_s = 64;
  int n_x = 65;
};

/// The angular potential h on [0,a]x(0,b). `s`, `x`, `h` hold the grid values
/// integrated along an L-path from (0, b/2) by the trapezoid rule; `at` gives h
/// at any point by Gauss-Legendre along the same path.
struct ThetaPotential {
  std::vector<double> s, x;
  std::vector<double> h;  // h[i * x.size() + j] at (s[i], x[j])
  double mixed_residual = 0.0;
  double x0 = 0.0;
  std::function<double(double, double)> two_hs, two_hx;

  double grid_value(std::size_t i, std::size_t j) const { return h[i * x.size() + j]; }

  double at(double sv, double xv) const {
    double v = 0.0;
    if (xv != x0) v += 0.5 * num::gauss_integrate([&](double xi) { return two_hx(0.0, xi); }, x0, xv);
    if (sv != 0.0) v += 0.5 * num::gauss_integrate([&](double si) { return two_hs(si, xv); }, 0.0, sv);
    return v;
  }
};

/// 2h_s = Re(phi')/Im(phi) - (a'/a) Re(psi')/Im(psi),
/// 2h_x = varphi' Im(psi')/Im(psi) - Im(phi')/Im(phi),
/// phi at s + ix and psi at a's/a + i varphi(x). Throws PathInconsistent when
/// the centred-difference curl |d_x(2h_s) - d_s(2h_x)| exceeds tol_mixed.
inline ThetaPotential theta_potential_build(const LiftProblem& prob, const Profile& profile,
                                            const PotentialGrid& grid = {}, double tol_mixed = kTolMixed) {
  prob.validate();
  if (grid.n_s < 2 || grid.n_x < 3 || grid.n_x % 2 == 0)
    throw Error(ErrorCode::InvalidArgument, "potential grid needs n_s >= 2 and odd n_x >= 3");
  auto prof = std::make_shared<const Profile>(profile);
  const Biholomorphism phi = prob.phi, psi = prob.psi;
  const double r = prob.a_p / prob.a;

  ThetaPotential tp;
  tp.two_hs = [phi, psi, prof, r](double s, double x) {
    const cplx z(s, x);
    const cplx w(r * s, (*prof)(x));
    return phi.deriv(z).real() / phi(z).imag() - r * psi.deriv(w).real() / psi(w).imag();
  };
  tp.two_hx = [phi, psi, prof, r](double s, double x) {
    const cplx z(s, x);
    const cplx w(r * s, (*prof)(x));
    return psi.deriv(w).imag() / psi(w).imag() * prof->slope(x) - phi.deriv(z).imag() / phi(z).imag();
  };
  const int ns = grid.n_s, nx = grid.n_x;
  tp.s = num::linspace(0.0, prob.a, ns);
  tp.x.resize(nx);
  for (int j = 0; j < nx; ++j) tp.x[j] = prob.b * (j + 0.5) / nx;
  const int jc = nx / 2;
  tp.x[jc] = 0.5 * prob.b;
  tp.x0 = tp.x[jc];

  std::vector<double> hs((ns + 1) * nx), hx((ns + 1) * nx);
  for (int i = 0; i <= ns; ++i)
    for (int j = 0; j < nx; ++j) {
      hs[i * nx + j] = tp.two_hs(tp.s[i], tp.x[j]);
      hx[i * nx + j] = tp.two_hx(tp.s[i], tp.x[j]);
    }

  tp.h.assign((ns + 1) * nx, 0.0);
  for (int j = jc + 1; j < nx; ++j)
    tp.h[j] = tp.h[j - 1] + 0.25 * (hx[j - 1] + hx[j]) * (tp.x[j] - tp.x[j - 1]);
  for (int j = jc - 1; j >= 0; --j)
    tp.h[j] = tp.h[j + 1] - 0.25 * (hx[j + 1] + hx[j]) * (tp.x[j + 1] - tp.x[j]);
  for (int i = 1; i <= ns; ++i)
    for (int j = 0; j < nx; ++j)
      tp.h[i * nx + j] =
          tp.h[(i - 1) * nx + j] + 0.25 * (hs[(i - 1) * nx + j] + hs[i * nx + j]) * (tp.s[i] - tp.s[i - 1]);

  double worst = 0.0;
  for (int i = 1; i < ns; ++i)
    for (int j = 1; j + 1 < nx; ++j) {
      const double dxs = (hs[i * nx + j + 1] - hs[i * nx + j - 1]) / (tp.x[j + 1] - tp.x[j - 1]);
      const double dsx = (hx[(i + 1) * nx + j] - hx[(i - 1) * nx + j]) / (tp.s[i + 1] - tp.s[i - 1]);
      worst = std::max(worst, std::abs(dxs - dsx));
    }
  tp.mixed_residual = worst;
  if (!(worst <= tol_mixed))
    throw Error(ErrorCode::PathInconsistent, "mixed-partial residual " + std::to_string(worst) + " exceeds tolerance");
  return tp;
}

/// p -> Psi_psi(a's/a, varphi(x), theta + h(s, x) + alpha), (s, x, theta) = Psi_phi^{-1}(p):
/// f1 = sqrt(Im W) e^{i(arg z + h + alpha)}, f2 = Re W, W = psi(a's/a + i varphi(x)).
/// Axis points go to (0, Re W).
inline QCMap assemble_lift(const LiftProblem& prob, const Profile& profile, const ThetaPotential& hpot, double alpha) {
  prob.validate();
  auto prof = std::make_shared<const Profile>(profile);
  auto pot = std::make_shared<const ThetaPotential>(hpot);
  const Biholomorphism phi = prob.phi, psi = prob.psi;
  const double a = prob.a, b = prob.b, r = prob.a_p / prob.a;
  QCMap f;
  f.name = "lift:" + phi.name + "/" + psi.name;
  f.eval = [=](const HPoint& p) {
    const cplx w(p.t(), std::norm(p.z()));
    const cplx zeta = invert_biholomorphism(phi, w, a, b);
    const double s = zeta.real(), x = zeta.imag();
    const cplx W = psi(cplx(r * s, (*prof)(x)));
    // on (or within rounding of) the axis the map extends by continuity
    if (!(x > 0.0) || !(W.imag() > 0.0)) return HPoint(cplx(0.0, 0.0), W.real());
    const double ang = std::arg(p.z()) + pot->at(s, x) + alpha;
    return HPoint(std::polar(std::sqrt(W.imag()), ang), W.real());
  };
  f.source = domain::ChartImage{phi, prob.a, prob.b};
  f.target = domain::ChartImage{psi, prob.a_p, prob.b_p};
  return f;
}

/// The half-plane map psi o f_varphi o phi^{-1}, f_varphi(s + ix) = (a'/a) s + i varphi(x).
inline PlaneMap lift_plane_map(const LiftProblem& prob, const Profile& profile) {
  auto prof = std::make_shared<const Profile>(profile);
  const Biholomorphism phi = prob.phi, psi = prob.psi;
  const double a = prob.a, b = prob.b, r = prob.a_p / prob.a;
  PlaneMap g;
  g.name = "gphi:" + phi.name + "/" + psi.name;
  g.g = [=](cplx w) {
    const cplx z = invert_biholomorphism(phi, w, a, b);
    return psi(cplx(r * z.real(), (*prof)(z.imag())));
  };
  auto parts = [=](cplx w, bool bar) {
    const cplx z = invert_biholomorphism(phi, w, a, b);
    const cplx W(r * z.real(), (*prof)(z.imag()));
    const double sl = prof->slope(z.imag());
    const cplx inv = 1.0 / phi.deriv(z);
    return bar ? psi.deriv(W) * 0.5 * (r - sl) * std::conj(inv) : psi.deriv(W) * 0.5 * (r + sl) * inv;
  };
  g.dg = [parts](cplx w) { return parts(w, false); };
  g.dgbar = [parts](cplx w) { return parts(w, true); };
  return g;
}

/// Max over samples of |Pi(f(p)) - psi(f_varphi(phi^{-1}(Pi(p))))|.
inline double verify_commutation(const QCMap& f, const LiftProblem& prob, const Profile& profile,
                                 const std::vector<HPoint>& samples) {
  const double r = prob.a_p / prob.a;
  double worst = 0.0;
  for (const auto& p : samples) {
    const cplx zeta = invert_biholomorphism(prob.phi, project_pi(p).w(), prob.a, prob.b);
    const cplx expect = prob.psi(cplx(r * zeta.real(), profile(zeta.imag())));
    worst = std::max(worst, std::abs(project_pi(f(p)).w() - expect));
  }
  return worst;
}

}  // namespace heisqc

#endif  // HEISQC_LIFT_BUILDER_HPP
