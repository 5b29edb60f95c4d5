#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "phg/algebra.hpp"
#include "phg/grade_set.hpp"
#include "phg/ids.hpp"
#include "phg/units.hpp"

namespace phg {

enum class ValueKind { Multivector, Scalar };

/// Declared activation metadata (σ). Saturation uses its own state.
enum class DeclFlag { Live, Latent, Fresh };

enum class EdgeKind {
  GeometricProduct,
  Outer,
  Inner,
  Regressive,
  Sandwich,
  Join,
  GradeSelect,
  Norm,
  CoLocation,
  Transfer,
  SyncBarrier,
  Boundary,
  Custom,
};

std::string_view to_string(EdgeKind kind);
std::string_view to_string(DeclFlag flag);

/// True for the kinds that drive grade inference during saturation.
bool is_inference_kind(EdgeKind kind);
/// Maps the four product kinds; nullopt for everything else.
std::optional<ProductKind> product_kind_of(EdgeKind kind);
EdgeKind edge_kind_of(ProductKind kind);

/// Metric: sqrt|<x reverse(x)>_0|. Measure: simplex measure from the
/// degenerate-direction coefficients of a join (length, area, volume).
enum class NormMode { Metric, Measure };

enum class BlockMode { Rectangle, Column, SingleTile };
std::string_view to_string(BlockMode mode);

struct CoLocationAnnotation {
  std::string name;
  std::vector<NodeId> members;
  std::vector<std::pair<NodeId, NodeId>> routes;     // directed, within members
  std::vector<std::pair<NodeId, NodeId>> dma_pairs;  // members sharing a channel
  std::vector<NodeId> sync;                           // await all route predecessors
  std::vector<int> footprint_kb;                      // parallel to members
  BlockMode mode = BlockMode::Rectangle;
};

struct EdgePayload {
  int grade = 0;                        // GradeSelect
  NormMode norm = NormMode::Metric;     // Norm
  std::string tag;                      // Custom
  std::optional<CoLocationAnnotation> colocation;
};

struct NodeSpec {
  std::string name;
  ValueKind kind = ValueKind::Multivector;
  GradeSet declared_grades;             // unknown when not declared
  std::optional<UnitVector> dimension;
  std::string coeffect;
  DeclFlag flag = DeclFlag::Live;
};

struct PhgNode : NodeSpec {
  NodeId id;
  /// Scalar nodes are implicitly grade {0}.
  GradeSet declaration() const {
    return kind == ValueKind::Scalar ? GradeSet::singleton(0) : declared_grades;
  }
};

struct EdgeSpec {
  std::string label;                    // optional; defaults to "f<index>"
  EdgeKind kind = EdgeKind::Custom;
  std::vector<NodeId> sources;          // ordered: products are not commutative
  NodeId target;
  EdgePayload payload;
  std::optional<std::uint64_t> reachability;  // all targets when absent
};

struct Hyperedge : EdgeSpec {
  EdgeId id;
  std::uint64_t reach = 0;
  bool reachable(std::size_t target_index) const { return (reach >> target_index) & 1u; }
};

/// Program Hypergraph: annotated nodes plus directed hyperedges S → t.
/// Binary edges are the |S| = 1 case. Insertion keeps the relation
/// {s → t} acyclic. Single writer; read-only once built.
class Phg {
 public:
  Phg() = default;
  explicit Phg(std::shared_ptr<const Algebra> algebra) : algebra_(std::move(algebra)) {}

  const std::shared_ptr<const Algebra>& algebra() const { return algebra_; }
  void set_algebra(std::shared_ptr<const Algebra> algebra) { algebra_ = std::move(algebra); }

  const std::vector<std::string>& base_units() const { return base_units_; }
  void set_base_units(std::vector<std::string> units) { base_units_ = std::move(units); }

  /// Configured target platforms; one reachability bit each (at most 64).
  const std::vector<std::string>& targets() const { return targets_; }
  void set_targets(std::vector<std::string> targets);

  /// Throws DuplicateName, InvalidArgument (bad unit width).
  NodeId add_node(NodeSpec spec);
  /// Throws UnknownNode, CycleIntroduced, ArityMismatch, GradeOutOfRange.
  EdgeId add_edge(EdgeSpec spec);

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<PhgNode>& nodes() const { return nodes_; }
  const std::vector<Hyperedge>& edges() const { return edges_; }
  const PhgNode& node(NodeId id) const;
  const Hyperedge& edge(EdgeId id) const;
  std::optional<NodeId> find_node(std::string_view name) const;
  std::optional<EdgeId> find_edge(std::string_view label) const;

  std::span<const EdgeId> incoming(NodeId id) const { return incoming_[id.value]; }
  std::span<const EdgeId> outgoing(NodeId id) const { return outgoing_[id.value]; }
  /// Incoming edges that participate in grade inference.
  std::vector<EdgeId> producers(NodeId id) const;

  /// Nodes ordered so every edge's sources precede its target.
  std::vector<NodeId> topological_order() const;

 private:
  bool reaches(NodeId from, NodeId to) const;

  std::shared_ptr<const Algebra> algebra_;
  std::vector<std::string> base_units_;
  std::vector<std::string> targets_;
  std::vector<PhgNode> nodes_;
  std::vector<Hyperedge> edges_;
  std::vector<std::vector<EdgeId>> incoming_;
  std::vector<std::vector<EdgeId>> outgoing_;
  std::unordered_map<std::string, NodeId> by_name_;
  std::unordered_map<std::string, EdgeId> by_label_;
};

/// Plain directed-graph view of a PHG whose hyperedges all have |S| = 1.
struct BinaryEdge {
  NodeId from;
  NodeId to;
  EdgeKind kind;
  EdgePayload payload;
  std::string label;
  std::uint64_t reach = 0;
};

struct BinaryGraph {
  std::shared_ptr<const Algebra> algebra;
  std::vector<std::string> base_units;
  std::vector<std::string> targets;
  std::vector<NodeSpec> nodes;
  std::vector<BinaryEdge> edges;
};

/// Throws ArityMismatch if some hyperedge has more than one source.
BinaryGraph to_binary_graph(const Phg& phg);
Phg from_binary_graph(const BinaryGraph& graph);

}  // namespace phg
