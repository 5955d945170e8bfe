#include "ecp3p/error.h"

namespace ecp3p {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotUnit: return "NotUnit";
    case ErrorCode::kNotRotation: return "NotRotation";
    case ErrorCode::kAngleMismatch: return "AngleMismatch";
    case ErrorCode::kNonCubic: return "NonCubic";
    case ErrorCode::kDegreeDrop: return "DegreeDrop";
    case ErrorCode::kInvalidCurveParams: return "InvalidCurveParams";
    case ErrorCode::kDegenerateParams: return "DegenerateParams";
    case ErrorCode::kEquatorPoint: return "EquatorPoint";
    case ErrorCode::kParallelAnchors: return "ParallelAnchors";
    case ErrorCode::kComplexSingularities: return "ComplexSingularities";
    case ErrorCode::kCoincidentSingularities: return "CoincidentSingularities";
    case ErrorCode::kZeroCoefficient: return "ZeroCoefficient";
    case ErrorCode::kNegativeDelta: return "NegativeDelta";
    case ErrorCode::kZeroRho: return "ZeroRho";
    case ErrorCode::kDegenerateCurve: return "DegenerateCurve";
    case ErrorCode::kInvalidProblem: return "InvalidProblem";
    case ErrorCode::kDegenerateViewLines: return "DegenerateViewLines";
    case ErrorCode::kNoViableFrame: return "NoViableFrame";
    case ErrorCode::kBackfacingPlane: return "BackfacingPlane";
    case ErrorCode::kDegenerateCubic: return "DegenerateCubic";
    case ErrorCode::kPlaneThroughOrigin: return "PlaneThroughOrigin";
    case ErrorCode::kExhaustedSampling: return "ExhaustedSampling";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

}  // namespace ecp3p
