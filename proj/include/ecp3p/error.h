#pragma once

#include <stdexcept>
#include <string>

namespace ecp3p {

enum class ErrorCode {
  kNotUnit,
  kNotRotation,
  kAngleMismatch,
  kNonCubic,
  kDegreeDrop,
  kInvalidCurveParams,
  kDegenerateParams,
  kEquatorPoint,
  kParallelAnchors,
  kComplexSingularities,
  kCoincidentSingularities,
  kZeroCoefficient,
  kNegativeDelta,
  kZeroRho,
  kDegenerateCurve,
  kInvalidProblem,
  kDegenerateViewLines,
  kNoViableFrame,
  kBackfacingPlane,
  kDegenerateCubic,
  kPlaneThroughOrigin,
  kExhaustedSampling,
  kInvalidConfig,
};

const char* to_string(ErrorCode code);

// Every recoverable failure in the library is reported through this type.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ecp3p
