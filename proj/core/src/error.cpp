#include "phg/error.hpp"

namespace phg {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionCeilingExceeded: return "DimensionCeilingExceeded";
    case ErrorCode::AlgebraMismatch: return "AlgebraMismatch";
    case ErrorCode::ModeMismatch: return "ModeMismatch";
    case ErrorCode::GradeOutOfRange: return "GradeOutOfRange";
    case ErrorCode::UnknownNode: return "UnknownNode";
    case ErrorCode::CycleIntroduced: return "CycleIntroduced";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::StructuralZeroKernel: return "StructuralZeroKernel";
    case ErrorCode::MissingSlot: return "MissingSlot";
    case ErrorCode::DuplicateVertex: return "DuplicateVertex";
    case ErrorCode::GradeMismatch: return "GradeMismatch";
    case ErrorCode::TooManyVertices: return "TooManyVertices";
    case ErrorCode::ModeError: return "ModeError";
    case ErrorCode::PlacementFailed: return "PlacementFailed";
    case ErrorCode::UnboundInput: return "UnboundInput";
    case ErrorCode::StalledGraph: return "StalledGraph";
    case ErrorCode::NormAtZero: return "NormAtZero";
    case ErrorCode::NonRationalResult: return "NonRationalResult";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnknownKeyword: return "UnknownKeyword";
    case ErrorCode::DuplicateName: return "DuplicateName";
    case ErrorCode::UnresolvedReference: return "UnresolvedReference";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace phg
