#ifndef HEISQC_ERROR_HPP
#define HEISQC_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace heisqc {

/// Failure categories raised by the library. Every one of them is recoverable:
/// callers sampling near singular sets (the vertical axis, domain boundaries)
/// are expected to catch and skip.
enum class ErrorCode {
  NonFinite,
  NotInHalfPlane,
  AxisPoint,
  DegenerateCurve,
  DomainEscape,
  UnsupportedDomain,
  UnknownFamily,
  DegenerateDerivative,
  BoundaryTooClose,
  BadModuli,
  BadProfile,
  Incompatible,
  NoSolution,
  NonUnique,
  PathInconsistent,
  ChartInversion,
  UnknownName,
  InvalidArgument,
};

inline constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::NotInHalfPlane: return "NotInHalfPlane";
    case ErrorCode::AxisPoint: return "AxisPoint";
    case ErrorCode::DegenerateCurve: return "DegenerateCurve";
    case ErrorCode::DomainEscape: return "DomainEscape";
    case ErrorCode::UnsupportedDomain: return "UnsupportedDomain";
    case ErrorCode::UnknownFamily: return "UnknownFamily";
    case ErrorCode::DegenerateDerivative: return "DegenerateDerivative";
    case ErrorCode::BoundaryTooClose: return "BoundaryTooClose";
    case ErrorCode::BadModuli: return "BadModuli";
    case ErrorCode::BadProfile: return "BadProfile";
    case ErrorCode::Incompatible: return "Incompatible";
    case ErrorCode::NoSolution: return "NoSolution";
    case ErrorCode::NonUnique: return "NonUnique";
    case ErrorCode::PathInconsistent: return "PathInconsistent";
    case ErrorCode::ChartInversion: return "ChartInversion";
    case ErrorCode::UnknownName: return "UnknownName";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace heisqc

#endif  // HEISQC_ERROR_HPP
