#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace phg {

enum class ErrorCode {
  DimensionCeilingExceeded,
  AlgebraMismatch,
  ModeMismatch,
  GradeOutOfRange,
  UnknownNode,
  CycleIntroduced,
  ArityMismatch,
  StructuralZeroKernel,
  MissingSlot,
  DuplicateVertex,
  GradeMismatch,
  TooManyVertices,
  ModeError,
  PlacementFailed,
  UnboundInput,
  StalledGraph,
  NormAtZero,
  NonRationalResult,
  SyntaxError,
  UnknownKeyword,
  DuplicateName,
  UnresolvedReference,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace phg
