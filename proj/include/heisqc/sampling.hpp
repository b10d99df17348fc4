#ifndef HEISQC_SAMPLING_HPP
#define HEISQC_SAMPLING_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <type_traits>
#include <variant>
#include <vector>

#include "heisqc/domain.hpp"
#include "heisqc/error.hpp"
#include "heisqc/heis_core.hpp"

namespace heisqc {

/// n seeded points of a Heisenberg domain kept a relative `margin` away from
/// its boundary and from the vertical axis.
inline std::vector<HPoint> sample_interior(const DomainDescriptor& d, std::size_t n, std::uint64_t seed,
                                           double margin = 0.02) {
  if (!(margin > 0.0 && margin < 0.5)) throw Error(ErrorCode::InvalidArgument, "margin must lie in (0, 0.5)");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(margin, 1.0 - margin);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::vector<HPoint> out;
  out.reserve(n);
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, domain::Cylinder>) {
          while (out.size() < n) {
            const double r = std::sqrt(x.b * unit(rng));
            out.emplace_back(std::polar(r, angle(rng)), x.a * unit(rng));
          }
        } else if constexpr (std::is_same_v<T, domain::CylinderShell>) {
          while (out.size() < n) {
            const double r = std::sqrt(x.b_lo + (x.b_hi - x.b_lo) * unit(rng));
            out.emplace_back(std::polar(r, angle(rng)), x.a * unit(rng));
          }
        } else if constexpr (std::is_same_v<T, domain::SphericalAnnulus>) {
          // exp chart: |z|^2 = e^s sin x, t = e^s cos x with e^{s/2} the norm
          while (out.size() < n) {
            const double s = 2.0 * (std::log(x.r_lo) + (std::log(x.r_hi) - std::log(x.r_lo)) * unit(rng));
            const double xi = std::numbers::pi * unit(rng);
            out.push_back(chart_to_heis(angle(rng), HalfPlanePoint(std::exp(cplx(s, xi)))));
          }
        } else if constexpr (std::is_same_v<T, domain::ChartImage>) {
          while (out.size() < n) {
            const cplx zeta(x.a * unit(rng), x.b * unit(rng));
            out.push_back(chart_to_heis(angle(rng), HalfPlanePoint(x.phi(zeta))));
          }
        } else {
          throw Error(ErrorCode::UnsupportedDomain, "cannot sample " + domain_name(d));
        }
      },
      d);
  return out;
}

}  // namespace heisqc

#endif  // HEISQC_SAMPLING_HPP
