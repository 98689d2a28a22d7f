#include "errors.hpp"

namespace orlicz {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Config: return "ConfigError";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::BracketFailure: return "BracketFailure";
    case ErrorCode::UnboundedSup: return "UnboundedSup";
    case ErrorCode::ConvexityViolation: return "ConvexityViolation";
    case ErrorCode::QuadratureNonConvergence: return "QuadratureNonConvergence";
    case ErrorCode::ZeroTotalMass: return "ZeroTotalMass";
    case ErrorCode::ZeroWeight: return "ZeroWeight";
    case ErrorCode::HypothesisViolation: return "HypothesisViolation";
    case ErrorCode::DegenerateTestFunction: return "DegenerateTestFunction";
    case ErrorCode::BadAlpha: return "BadAlpha";
    case ErrorCode::NonIntegrableIntegrand: return "NonIntegrableIntegrand";
    case ErrorCode::BoundViolation: return "BoundViolation";
  }
  return "Unknown";
}

}  // namespace orlicz
