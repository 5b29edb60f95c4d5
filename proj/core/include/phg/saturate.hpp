#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "phg/diagnostic.hpp"
#include "phg/hypergraph.hpp"

namespace phg {

enum class Activation { Fresh, Elaborated, Saturated };
std::string_view to_string(Activation a);

struct NodeAnnotation {
  GradeSet grades;
  Activation activation = Activation::Fresh;
  int round = 0;  // firing round that completed the node; 0 for inputs
};

struct FiringRecord {
  EdgeId edge;
  NodeId target;
  GradeSet inferred;      // what the edge computed
  NodeAnnotation after;   // target annotation after the firing
  int round = 0;
};

struct StallRecord {
  NodeId node;
  std::string reason;
};

struct SaturationReport {
  std::size_t iterations = 0;  // worklist pops
  int rounds = 0;
  std::vector<NodeAnnotation> initial;
  std::vector<NodeAnnotation> annotations;
  std::vector<FiringRecord> trace;
  std::vector<StallRecord> stalled;
  std::vector<Diagnostic> diagnostics;
};

enum class WorklistOrder { Fifo, Lifo, Seeded };

struct SaturationOptions {
  WorklistOrder order = WorklistOrder::Fifo;
  std::uint64_t seed = 0;                   // used by Seeded
  std::optional<std::size_t> target_index;  // ignore edges unreachable on this target
};

/// Monotone worklist fixpoint. An inference edge fires once, and only after
/// every source is Saturated. Conflicts and stalls are reported, not thrown.
SaturationReport saturate(const Phg& phg, const SaturationOptions& options = {});

/// Information-quality proxy for one fixpoint step: saturated nodes, nodes
/// with a non-unknown grade set, nodes at least Elaborated. Compared
/// lexicographically.
struct Quality {
  std::size_t saturated = 0;
  std::size_t known = 0;
  std::size_t elaborated = 0;
  friend auto operator<=>(const Quality&, const Quality&) = default;
};

/// Replays the trace: element 0 is the initial state, element k the state
/// after the k-th firing.
std::vector<Quality> information_quality(const SaturationReport& report);

/// Grades an inference edge produces from its sources' grade sets.
struct EdgeInference {
  GradeSet grades;
  std::vector<std::string> warnings;
};
EdgeInference infer_edge(const Algebra& alg, const Hyperedge& edge, std::span<const GradeSet> sources);

}  // namespace phg
