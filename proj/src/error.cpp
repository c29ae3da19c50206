#include "nabla/error.hpp"

namespace nabla {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MismatchedVariables: return "MismatchedVariables";
    case ErrorCode::RingMismatch: return "RingMismatch";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::MissingAssignment: return "MissingAssignment";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotArtinian: return "NotArtinian";
    case ErrorCode::NotZeroDimensional: return "NotZeroDimensional";
    case ErrorCode::InseparableCase: return "InseparableCase";
    case ErrorCode::NotLocal: return "NotLocal";
    case ErrorCode::ResidueNotGroundField: return "ResidueNotGroundField";
    case ErrorCode::PointNotOnScheme: return "PointNotOnScheme";
    case ErrorCode::NotEquidimensionalAssertionFailed: return "NotEquidimensionalAssertionFailed";
    case ErrorCode::BasisNotNested: return "BasisNotNested";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ContainmentViolated: return "ContainmentViolated";
    case ErrorCode::UncertifiedReduction: return "UncertifiedReduction";
    case ErrorCode::TraceNotStabilized: return "TraceNotStabilized";
    case ErrorCode::TailMismatch: return "TailMismatch";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnboundName: return "UnboundName";
    case ErrorCode::Redefinition: return "Redefinition";
  }
  return "Unknown";
}

}  // namespace nabla
