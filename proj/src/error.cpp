#include "spinphase/error.hpp"

namespace spinphase {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::InvalidC: return "InvalidC";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::InvalidSchedule: return "InvalidSchedule";
    case ErrorCode::StepTooLarge: return "StepTooLarge";
    case ErrorCode::NormBlowup: return "NormBlowup";
    case ErrorCode::QuadratureFailure: return "QuadratureFailure";
    case ErrorCode::DecayForbidden: return "DecayForbidden";
    case ErrorCode::ZeroRatio: return "ZeroRatio";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::NonContraction: return "NonContraction";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace spinphase
