#ifndef HEISQC_TESTS_PERTURB_HPP
#define HEISQC_TESTS_PERTURB_HPP

// Randomized admissible perturbations of closed-form extremal densities.

#include <cmath>
#include <numbers>
#include <random>

#include "heisqc/modulus.hpp"

namespace heisqc::testing {

struct Perturbation {
  double eps, k1, k2, c1, c2;
};

inline Perturbation random_perturbation(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> eps(0.05, 0.5), k(0.5, 4.0), c(0.0, 2.0 * std::numbers::pi);
  return {eps(rng), k(rng), k(rng), c(rng), c(rng)};
}

/// rho * (1 + eps * eta) with |eta| <= 1 smooth (angle-dependent on the group).
inline Density perturbed(const Density& rho, const Perturbation& q) {
  Density r = rho;
  if (rho.kind == DensityKind::heisenberg) {
    r.heis = [f = rho.heis, q](const HPoint& p) {
      const double eta = std::cos(q.k1 * p.t() + q.c1) * std::cos(q.k2 * std::abs(p.z()) + q.c2 + std::arg(p.z()));
      return f(p) * (1.0 + q.eps * eta);
    };
  } else {
    r.plane = [f = rho.plane, q](cplx w) {
      return f(w) * (1.0 + q.eps * std::cos(q.k1 * w.real() + q.c1) * std::cos(q.k2 * w.imag() + q.c2));
    };
  }
  return r;
}

/// Energy of rho / m, m the minimum curve integral over the closed form's
/// family, so that rho / m is admissible.
inline double renormalized_energy(const ClosedForm& cf, const Density& rho, int grid, int n_lambda, int n_s) {
  if (rho.kind == DensityKind::plane) {
    const double m = admissibility_min(rho, *cf.plane_family, n_lambda, n_s).min_curve_integral;
    return density_energy_plane(rho, {grid, grid}) / (m * m);
  }
  const double m = admissibility_min(rho, *cf.foliation, n_lambda, n_lambda, n_s).min_curve_integral;
  return density_energy_heis(rho, {grid, grid, grid}) / (m * m * m * m);
}

}  // namespace heisqc::testing

#endif  // HEISQC_TESTS_PERTURB_HPP
