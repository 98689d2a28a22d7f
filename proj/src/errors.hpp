#pragma once

#include <stdexcept>
#include <string>

namespace orlicz {

enum class ErrorCode {
  InvalidArgument = 1,
  Config,
  NotInvertible,
  BracketFailure,
  UnboundedSup,
  ConvexityViolation,
  QuadratureNonConvergence,
  ZeroTotalMass,
  ZeroWeight,
  HypothesisViolation,
  DegenerateTestFunction,
  BadAlpha,
  NonIntegrableIntegrand,
  BoundViolation,
};

const char* to_string(ErrorCode code) noexcept;

/// Every failure raised by the core carries one of the codes above; the C API
/// maps them one-to-one onto ok_status values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace orlicz
