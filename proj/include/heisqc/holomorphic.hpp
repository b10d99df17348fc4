#ifndef HEISQC_HOLOMORPHIC_HPP
#define HEISQC_HOLOMORPHIC_HPP

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "heisqc/error.hpp"
#include "heisqc/heis_core.hpp"

namespace heisqc {

/// A holomorphic map from a rectangle (0,a)x(0,b), written s + ix, into the
/// upper half-plane, together with its complex derivative.
struct Biholomorphism {
  std::string name = "custom";
  std::map<std::string, double> params;
  std::function<cplx(cplx)> eval;
  std::function<cplx(cplx)> deriv;

  cplx operator()(cplx w) const { return eval(w); }
};

/// Builtin registry: identity, exp, translate_i, affine (params c_re, c_im, d_re, d_im).
inline Biholomorphism builtin_biholomorphism(const std::string& name, const std::map<std::string, double>& params = {}) {
  Biholomorphism f;
  f.name = name;
  f.params = params;
  if (name == "identity") {
    f.eval = [](cplx w) { return w; };
    f.deriv = [](cplx) { return cplx(1.0, 0.0); };
  } else if (name == "exp") {
    f.eval = [](cplx w) { return std::exp(w); };
    f.deriv = [](cplx w) { return std::exp(w); };
  } else if (name == "translate_i") {
    f.eval = [](cplx w) { return w + cplx(0.0, 1.0); };
    f.deriv = [](cplx) { return cplx(1.0, 0.0); };
  } else if (name == "affine") {
    auto get = [&](const char* key, double fallback) {
      auto it = params.find(key);
      return it == params.end() ? fallback : it->second;
    };
    const cplx c(get("c_re", get("c", 1.0)), get("c_im", 0.0));
    const cplx d(get("d_re", get("d", 0.0)), get("d_im", 0.0));
    if (c == cplx(0.0, 0.0)) throw Error(ErrorCode::InvalidArgument, "affine map needs c != 0");
    f.eval = [c, d](cplx w) { return c * w + d; };
    f.deriv = [c](cplx) { return c; };
  } else {
    throw Error(ErrorCode::UnknownName, "no builtin biholomorphism named '" + name + "'");
  }
  return f;
}

struct BiholomorphismCheck {
  double min_im = 0.0;
  double min_abs_deriv = 0.0;
  double cauchy_riemann_residual = 0.0;
  bool ok = false;
};

/// Samples the pair on an interior grid of (0,a)x(0,b): Im(eval) > 0,
/// deriv != 0, and deriv agrees with finite differences of eval along both
/// coordinate directions (relative residual <= 1e-6).
inline BiholomorphismCheck validate_biholomorphism(const Biholomorphism& f, double a, double b, int n = 16) {
  BiholomorphismCheck r;
  r.min_im = std::numeric_limits<double>::infinity();
  r.min_abs_deriv = std::numeric_limits<double>::infinity();
  const double h = 1e-6 * std::max(a, b);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const cplx w(a * (i + 0.5) / n, b * (j + 0.5) / n);
      const cplx v = f(w);
      const cplx d = f.deriv(w);
      r.min_im = std::min(r.min_im, v.imag());
      r.min_abs_deriv = std::min(r.min_abs_deriv, std::abs(d));
      const cplx dx = (f(w + h) - f(w - h)) / (2.0 * h);
      const cplx dy = (f(w + cplx(0, h)) - f(w - cplx(0, h))) / cplx(0.0, 2.0 * h);
      const double scale = std::max(1.0, std::abs(d));
      r.cauchy_riemann_residual =
          std::max({r.cauchy_riemann_residual, std::abs(dx - d) / scale, std::abs(dy - d) / scale});
    }
  }
  r.ok = r.min_im > 0.0 && r.min_abs_deriv > 0.0 && r.cauchy_riemann_residual <= 1e-6;
  return r;
}

/// Solves f(zeta) = target for zeta in the closed rectangle [0,a]x[0,b] by
/// damped Newton seeded from a coarse grid lookup. Throws ChartInversion if
/// Newton stalls or the root lies outside the rectangle.
inline cplx invert_biholomorphism(const Biholomorphism& f, cplx target, double a, double b, int seed_grid = 8) {
  cplx best(0.5 * a, 0.5 * b);
  double best_res = std::abs(f(best) - target);
  for (int i = 0; i <= seed_grid; ++i) {
    for (int j = 1; j < seed_grid; ++j) {
      const cplx w(a * i / seed_grid, b * j / seed_grid);
      const double res = std::abs(f(w) - target);
      if (res < best_res) {
        best_res = res;
        best = w;
      }
    }
  }
  cplx z = best;
  cplx fz = f(z) - target;
  const double goal = 4.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(target));
  for (int it = 0; it < 80 && std::abs(fz) > goal; ++it) {
    const cplx d = f.deriv(z);
    if (d == cplx(0.0, 0.0)) break;
    const cplx step = fz / d;
    double lambda = 1.0;
    cplx trial = z - step;
    cplx ft = f(trial) - target;
    while (!(std::abs(ft) < std::abs(fz)) && lambda > 1e-6) {
      lambda *= 0.5;
      trial = z - lambda * step;
      ft = f(trial) - target;
    }
    if (!(std::abs(ft) < std::abs(fz))) {
      // no further decrease; accept if the step itself is at rounding level
      if (std::abs(step) <= 1e-14 * (1.0 + std::abs(z))) break;
      throw Error(ErrorCode::ChartInversion, "Newton stalled in chart inversion");
    }
    z = trial;
    fz = ft;
    if (std::abs(lambda * step) <= 1e-15 * (1.0 + std::abs(z))) break;
  }
  if (!(std::abs(fz) <= 1e-10 * (1.0 + std::abs(target))))
    throw Error(ErrorCode::ChartInversion, "chart inversion did not converge");
  const double tol_s = 1e-9 * a, tol_x = 1e-9 * b;
  if (z.real() < -tol_s || z.real() > a + tol_s || z.imag() < -tol_x || z.imag() > b + tol_x)
    throw Error(ErrorCode::ChartInversion, "point is outside the chart image");
  return z;
}

}  // namespace heisqc

#endif  // HEISQC_HOLOMORPHIC_HPP
