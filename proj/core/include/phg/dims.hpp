#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "phg/diagnostic.hpp"
#include "phg/hypergraph.hpp"
#include "phg/units.hpp"

namespace phg {

struct SaturationReport;

/// One unknown dimension. Every node gets one; a Measure-norm edge adds a
/// scale variable that carries the physical size of its homogeneous input.
struct DimVariable {
  std::string name;
  std::optional<NodeId> node;
  std::optional<EdgeId> scale_of;
};

/// Σ coefficient·variable = constant, over ℤ^n.
struct DimConstraint {
  std::vector<std::pair<std::size_t, std::int64_t>> terms;
  UnitVector constant;
  std::optional<EdgeId> edge;  // provenance: generating edge, or none for a declaration
  std::optional<NodeId> node;  // provenance for declarations
  std::string description;
};

struct DimSystem {
  std::vector<std::string> bases;
  std::vector<DimVariable> variables;
  std::vector<DimConstraint> constraints;
};

enum class DimFailure { Contradiction, NonIntegral };

struct DimSolution {
  bool consistent = true;
  std::vector<UnitVector> assignment;        // per variable, when consistent
  std::vector<std::size_t> underdetermined;  // free variables, set to dimensionless
  // Inconsistent only:
  std::optional<std::size_t> failing;        // index into constraints
  DimFailure failure = DimFailure::Contradiction;
  /// Integer combination of constraints (index, multiplier) whose left-hand
  /// sides cancel, and the non-zero unit it leaves on the right.
  std::vector<std::pair<std::size_t, std::int64_t>> witness;
  UnitVector residual;
};

/// Node declarations first (declaration order), then edges (edge order).
/// Empty when the program declares no base units.
DimSystem collect_constraints(const Phg& phg);

/// Incremental fraction-free Gauss-Jordan elimination over ℤ. Reports the
/// first constraint, in insertion order, that contradicts its predecessors.
DimSolution solve(const DimSystem& system);

struct DimCheck {
  DimSystem system;
  DimSolution solution;
  std::vector<Diagnostic> diagnostics;
};

/// collect + solve + diagnostics. When a saturation report is given, a GP
/// whose target has several grades and whose sources carry different
/// dimensions draws a warning.
DimCheck check_dimensions(const Phg& phg, const SaturationReport* saturation = nullptr);

}  // namespace phg
