#ifndef HEISQC_DOMAIN_HPP
#define HEISQC_DOMAIN_HPP

#include <algorithm>
#include <cmath>
#include <string>
#include <type_traits>
#include <variant>

#include "heisqc/error.hpp"
#include "heisqc/heis_core.hpp"
#include "heisqc/holomorphic.hpp"

namespace heisqc {

namespace domain {

/// The whole group (or the whole half-plane for plane densities).
struct Whole {};

/// {0 < t < a, |z| < sqrt(b)}
struct Cylinder {
  double a, b;
};

/// {0 < t < a, b_lo < |z|^2 < b_hi}
struct CylinderShell {
  double a, b_lo, b_hi;
};

/// {r_lo < ||p|| < r_hi} for the Koranyi gauge.
struct SphericalAnnulus {
  double r_lo, r_hi;
};

/// Psi(S^1 x phi((0,a)x(0,b))).
struct ChartImage {
  Biholomorphism phi;
  double a, b;
};

/// (0,a)x(0,b) in the half-plane.
struct PlaneRectangle {
  double a, b;
};

/// phi((0,a)x(0,b)) in the half-plane.
struct PlaneImage {
  Biholomorphism phi;
  double a, b;
};

}  // namespace domain

using DomainDescriptor = std::variant<domain::Whole, domain::Cylinder, domain::CylinderShell, domain::SphericalAnnulus,
                                      domain::ChartImage, domain::PlaneRectangle, domain::PlaneImage>;

inline void validate_domain(const DomainDescriptor& d) {
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  bool ok = std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, domain::Whole>) {
          return true;
        } else if constexpr (std::is_same_v<T, domain::CylinderShell>) {
          return positive(x.a) && x.b_lo >= 0.0 && x.b_lo < x.b_hi;
        } else if constexpr (std::is_same_v<T, domain::SphericalAnnulus>) {
          return x.r_lo >= 0.0 && x.r_lo < x.r_hi;
        } else {
          return positive(x.a) && positive(x.b);
        }
      },
      d);
  if (!ok) throw Error(ErrorCode::InvalidArgument, "domain dimensions must be positive and ordered");
}

inline bool is_plane_domain(const DomainDescriptor& d) {
  return std::holds_alternative<domain::PlaneRectangle>(d) || std::holds_alternative<domain::PlaneImage>(d);
}

inline std::string domain_name(const DomainDescriptor& d) {
  static const char* names[] = {"whole", "cylinder", "cylinder_shell", "spherical_annulus",
                                "chart_image", "plane_rectangle", "plane_image"};
  return names[d.index()];
}

/// Characteristic length, used to scale finite-difference steps.
inline double domain_scale(const DomainDescriptor& d) {
  return std::visit(
      [](const auto& x) -> double {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, domain::Whole>) {
          return 1.0;
        } else if constexpr (std::is_same_v<T, domain::Cylinder>) {
          return std::max(x.a, std::sqrt(x.b));
        } else if constexpr (std::is_same_v<T, domain::CylinderShell>) {
          return std::max(x.a, std::sqrt(x.b_hi));
        } else if constexpr (std::is_same_v<T, domain::SphericalAnnulus>) {
          return x.r_hi;
        } else if constexpr (std::is_same_v<T, domain::PlaneRectangle>) {
          return std::max(x.a, x.b);
        } else {
          double s = 0.0;
          for (int i = 0; i <= 4; ++i)
            for (int j = 0; j <= 4; ++j) {
              const cplx w = x.phi(cplx(x.a * i / 4.0, x.b * j / 4.0));
              s = std::max({s, std::abs(w.real()), std::sqrt(std::max(0.0, w.imag()))});
            }
          return s > 0.0 ? s : 1.0;
        }
      },
      d);
}

/// Closed-set membership with relative slack `tol` (tol = 0: the closure).
inline bool contains(const DomainDescriptor& d, const HPoint& p, double tol = 1e-9) {
  const double r2 = std::norm(p.z());
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, domain::Whole>) {
          return true;
        } else if constexpr (std::is_same_v<T, domain::Cylinder>) {
          return p.t() >= -tol * x.a && p.t() <= x.a * (1 + tol) && r2 <= x.b * (1 + tol);
        } else if constexpr (std::is_same_v<T, domain::CylinderShell>) {
          return p.t() >= -tol * x.a && p.t() <= x.a * (1 + tol) && r2 >= x.b_lo * (1 - tol) &&
                 r2 <= x.b_hi * (1 + tol);
        } else if constexpr (std::is_same_v<T, domain::SphericalAnnulus>) {
          const double n = heis_norm(p);
          return n >= x.r_lo * (1 - tol) && n <= x.r_hi * (1 + tol);
        } else if constexpr (std::is_same_v<T, domain::ChartImage>) {
          if (r2 == 0.0) return false;
          try {
            const cplx zeta = invert_biholomorphism(x.phi, cplx(p.t(), r2), x.a, x.b);
            return zeta.real() >= -tol * x.a && zeta.real() <= x.a * (1 + tol) && zeta.imag() >= -tol * x.b &&
                   zeta.imag() <= x.b * (1 + tol);
          } catch (const Error&) {
            return false;
          }
        } else {
          return false;  // plane domains hold no Heisenberg points
        }
      },
      d);
}

inline bool contains_plane(const DomainDescriptor& d, cplx w, double tol = 1e-9) {
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, domain::Whole>) {
          return w.imag() > 0.0;
        } else if constexpr (std::is_same_v<T, domain::PlaneRectangle>) {
          return w.real() >= -tol * x.a && w.real() <= x.a * (1 + tol) && w.imag() >= -tol * x.b &&
                 w.imag() <= x.b * (1 + tol);
        } else if constexpr (std::is_same_v<T, domain::PlaneImage>) {
          try {
            const cplx zeta = invert_biholomorphism(x.phi, w, x.a, x.b);
            return zeta.real() >= -tol * x.a && zeta.real() <= x.a * (1 + tol) && zeta.imag() >= -tol * x.b &&
                   zeta.imag() <= x.b * (1 + tol);
          } catch (const Error&) {
            return false;
          }
        } else {
          return false;
        }
      },
      d);
}

}  // namespace heisqc

#endif  // HEISQC_DOMAIN_HPP
