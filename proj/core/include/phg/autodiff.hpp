#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "phg/hypergraph.hpp"
#include "phg/multivector.hpp"

namespace phg {

/// Sum with a single rounding at extraction: rational in exact mode,
/// Neumaier compensation (with fma-recovered product errors) in float mode.
/// Not safe for concurrent writers.
class ExactAccumulator {
 public:
  explicit ExactAccumulator(NumericMode mode);

  NumericMode mode() const { return mode_; }
  std::size_t count() const { return count_; }
  void add(const Scalar& term);
  void add_product(const Scalar& a, const Scalar& b);
  Scalar value() const;

 private:
  void add_float(double x);

  NumericMode mode_;
  std::size_t count_ = 0;
  Rational exact_ = 0;
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

Scalar accumulate(NumericMode mode, std::span<const Scalar> terms);

struct DualMultivector {
  Multivector primal;
  Multivector tangent;
};

using ValueMap = std::map<NodeId, Multivector>;

enum class EvalBackend { Dense, Kernel };

struct EvalOptions {
  EvalBackend backend = EvalBackend::Dense;
  bool retain_all = false;  // keep every value instead of only sinks
};

struct EvalStats {
  std::size_t evaluated = 0;
  std::size_t peak_live = 0;  // most values held at once
};

struct EvalResult {
  ValueMap values;
  EvalStats stats;
  std::vector<std::string> warnings;
};

struct DualResult {
  std::map<NodeId, DualMultivector> values;
  EvalStats stats;
  std::vector<std::string> warnings;
};

/// Topological evaluation of the value-carrying edges. A node with several
/// producers takes its first. Values are released once their last consumer
/// has run. Throws UnboundInput, StalledGraph, GradeMismatch (input outside
/// its declared grades), NonRationalResult (irrational norm in exact mode).
EvalResult eval(const Phg& phg, const ValueMap& inputs, const EvalOptions& options = {});

/// One forward pass over dual multivectors. Inputs absent from `direction`
/// get a zero tangent. Throws NormAtZero in addition to eval's errors.
DualResult directional_derivative(const Phg& phg, const ValueMap& inputs, const ValueMap& direction,
                                  const EvalOptions& options = {});

}  // namespace phg
