#pragma once

#include <optional>
#include <string>
#include <vector>

#include "phg/ids.hpp"

namespace phg {

/// A report entry. `category` is a short stable tag ("grade", "dims",
/// "stall", "mesh", "place", ...) used by the CLI's structured output.
struct Diagnostic {
  Severity severity = Severity::Warning;
  std::string category;
  std::string message;
  std::optional<NodeId> node;
  std::optional<EdgeId> edge;
  std::string code;  // machine-readable, e.g. "grade-disjoint"
};

inline bool has_errors(const std::vector<Diagnostic>& diags) {
  for (const Diagnostic& d : diags) {
    if (d.severity == Severity::Error) return true;
  }
  return false;
}

}  // namespace phg
