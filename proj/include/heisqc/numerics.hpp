#ifndef HEISQC_NUMERICS_HPP
#define HEISQC_NUMERICS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <numbers>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "heisqc/error.hpp"

namespace heisqc::num {

/// Pairwise (cascade) summation; fixed association order for a given length.
inline double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

inline int even_intervals(int n) { return n < 2 ? 2 : n + (n % 2); }

/// Composite Simpson weights for n intervals (n rounded up to even) on [lo, hi].
inline std::vector<double> simpson_weights(int n, double lo, double hi) {
  n = even_intervals(n);
  const double h = (hi - lo) / n;
  std::vector<double> w(n + 1);
  for (int i = 0; i <= n; ++i) w[i] = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
  for (auto& x : w) x *= h / 3.0;
  return w;
}

inline std::vector<double> linspace(double lo, double hi, int n_intervals) {
  std::vector<double> x(n_intervals + 1);
  for (int i = 0; i <= n_intervals; ++i) x[i] = lo + (hi - lo) * i / n_intervals;
  x.back() = hi;
  return x;
}

/// Simpson rule of f over [lo, hi] with n intervals.
template <class F>
double simpson(F&& f, double lo, double hi, int n) {
  n = even_intervals(n);
  const auto w = simpson_weights(n, lo, hi);
  const auto x = linspace(lo, hi, n);
  std::vector<double> terms(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) terms[i] = w[i] * f(x[i]);
  return pairwise_sum(terms);
}

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

/// Gauss-Legendre rule of order n (Newton on the Legendre recurrence).
inline GaussRule gauss_legendre(int n) {
  GaussRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    r.nodes[i] = x;
    r.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return r;
}

inline const GaussRule& gauss8() {
  static const GaussRule rule = gauss_legendre(8);
  return rule;
}

/// Composite 8-point Gauss-Legendre over [lo, hi] with `panels` panels.
template <class F>
double gauss_integrate(F&& f, double lo, double hi, int panels = 4) {
  const auto& g = gauss8();
  const double h = (hi - lo) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = lo + (p + 0.5) * h;
    double s = 0.0;
    for (std::size_t k = 0; k < g.nodes.size(); ++k) s += g.weights[k] * f(mid + 0.5 * h * g.nodes[k]);
    total += 0.5 * h * s;
  }
  return total;
}

/// Piecewise cubic Hermite interpolant through (x_k, y_k, y'_k); x strictly increasing.
class HermiteSpline {
 public:
  HermiteSpline() = default;
  HermiteSpline(std::vector<double> x, std::vector<double> y, std::vector<double> dy)
      : x_(std::move(x)), y_(std::move(y)), dy_(std::move(dy)) {
    if (x_.size() < 2 || y_.size() != x_.size() || dy_.size() != x_.size())
      throw Error(ErrorCode::InvalidArgument, "Hermite spline needs >= 2 consistent samples");
  }

  double lo() const { return x_.front(); }
  double hi() const { return x_.back(); }
  const std::vector<double>& x() const { return x_; }
  const std::vector<double>& y() const { return y_; }
  const std::vector<double>& dy() const { return dy_; }

  double operator()(double x) const { return eval(x, false); }
  double derivative(double x) const { return eval(x, true); }

 private:
  double eval(double x, bool deriv) const {
    std::size_t i;
    if (x <= x_.front()) {
      i = 0;
    } else if (x >= x_.back()) {
      i = x_.size() - 2;
    } else {
      i = static_cast<std::size_t>(std::upper_bound(x_.begin(), x_.end(), x) - x_.begin()) - 1;
    }
    const double h = x_[i + 1] - x_[i];
    const double u = (x - x_[i]) / h;
    const double y0 = y_[i], y1 = y_[i + 1], m0 = dy_[i] * h, m1 = dy_[i + 1] * h;
    if (!deriv) {
      const double h00 = (1 + 2 * u) * (1 - u) * (1 - u);
      const double h10 = u * (1 - u) * (1 - u);
      const double h01 = u * u * (3 - 2 * u);
      const double h11 = u * u * (u - 1);
      return h00 * y0 + h10 * m0 + h01 * y1 + h11 * m1;
    }
    const double d00 = 6 * u * u - 6 * u;
    const double d10 = 3 * u * u - 4 * u + 1;
    const double d01 = -6 * u * u + 6 * u;
    const double d11 = 3 * u * u - 2 * u;
    return (d00 * y0 + d10 * m0 + d01 * y1 + d11 * m1) / h;
  }

  std::vector<double> x_, y_, dy_;
};

/// Worker count: HEISQC_THREADS if set, else hardware concurrency.
inline unsigned thread_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("HEISQC_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return n;
}

/// out[i] = f(i) for i in [0, n), computed in parallel. Each slot is written by
/// exactly one task, so the result does not depend on the thread count.
template <class F>
std::vector<double> parallel_map(std::size_t n, F&& f) {
  std::vector<double> out(n);
  const unsigned workers = std::min<unsigned>(thread_count(), static_cast<unsigned>(std::max<std::size_t>(n, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
    return out;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < n; i += workers) out[i] = f(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace heisqc::num

#endif  // HEISQC_NUMERICS_HPP
