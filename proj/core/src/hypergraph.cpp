#include "phg/hypergraph.hpp"

#include <algorithm>
#include <queue>

#include "phg/error.hpp"

namespace phg {

std::string_view to_string(EdgeKind kind) {
  switch (kind) {
    case EdgeKind::GeometricProduct: return "gp";
    case EdgeKind::Outer: return "outer";
    case EdgeKind::Inner: return "inner";
    case EdgeKind::Regressive: return "regressive";
    case EdgeKind::Sandwich: return "sandwich";
    case EdgeKind::Join: return "join";
    case EdgeKind::GradeSelect: return "select";
    case EdgeKind::Norm: return "norm";
    case EdgeKind::CoLocation: return "colocate";
    case EdgeKind::Transfer: return "transfer";
    case EdgeKind::SyncBarrier: return "sync";
    case EdgeKind::Boundary: return "boundary";
    case EdgeKind::Custom: return "custom";
  }
  return "?";
}

std::string_view to_string(DeclFlag flag) {
  switch (flag) {
    case DeclFlag::Live: return "live";
    case DeclFlag::Latent: return "latent";
    case DeclFlag::Fresh: return "fresh";
  }
  return "?";
}

std::string_view to_string(BlockMode mode) {
  switch (mode) {
    case BlockMode::Rectangle: return "rect";
    case BlockMode::Column: return "column";
    case BlockMode::SingleTile: return "tile";
  }
  return "?";
}

bool is_inference_kind(EdgeKind kind) {
  switch (kind) {
    case EdgeKind::GeometricProduct:
    case EdgeKind::Outer:
    case EdgeKind::Inner:
    case EdgeKind::Regressive:
    case EdgeKind::Sandwich:
    case EdgeKind::Join:
    case EdgeKind::GradeSelect:
    case EdgeKind::Norm:
      return true;
    default:
      return false;
  }
}

std::optional<ProductKind> product_kind_of(EdgeKind kind) {
  switch (kind) {
    case EdgeKind::GeometricProduct: return ProductKind::GP;
    case EdgeKind::Outer: return ProductKind::Outer;
    case EdgeKind::Inner: return ProductKind::Inner;
    case EdgeKind::Regressive: return ProductKind::Regressive;
    default: return std::nullopt;
  }
}

EdgeKind edge_kind_of(ProductKind kind) {
  switch (kind) {
    case ProductKind::GP: return EdgeKind::GeometricProduct;
    case ProductKind::Outer: return EdgeKind::Outer;
    case ProductKind::Inner: return EdgeKind::Inner;
    case ProductKind::Regressive: return EdgeKind::Regressive;
  }
  return EdgeKind::Custom;
}

namespace {

void check_arity(EdgeKind kind, std::size_t n, const std::string& label) {
  auto fail = [&](const std::string& expected) {
    throw Error(ErrorCode::ArityMismatch, std::string(to_string(kind)) + " edge '" + label + "' expects " + expected +
                                              " source(s), got " + std::to_string(n));
  };
  switch (kind) {
    case EdgeKind::GeometricProduct:
    case EdgeKind::Outer:
    case EdgeKind::Inner:
    case EdgeKind::Regressive:
    case EdgeKind::Sandwich:
    case EdgeKind::Boundary:
      if (n != 2) fail("2");
      break;
    case EdgeKind::Join:
      if (n < 2) fail("at least 2");
      break;
    case EdgeKind::GradeSelect:
    case EdgeKind::Norm:
    case EdgeKind::Transfer:
      if (n != 1) fail("1");
      break;
    case EdgeKind::CoLocation:
    case EdgeKind::SyncBarrier:
    case EdgeKind::Custom:
      if (n < 1) fail("at least 1");
      break;
  }
}

}  // namespace

void Phg::set_targets(std::vector<std::string> targets) {
  if (targets.size() > 64) throw Error(ErrorCode::InvalidArgument, "at most 64 targets are supported");
  targets_ = std::move(targets);
}

NodeId Phg::add_node(NodeSpec spec) {
  if (spec.name.empty()) throw Error(ErrorCode::InvalidArgument, "node name must not be empty");
  if (by_name_.contains(spec.name)) throw Error(ErrorCode::DuplicateName, "duplicate node '" + spec.name + "'");
  if (spec.dimension && spec.dimension->size() != base_units_.size()) {
    throw Error(ErrorCode::InvalidArgument, "node '" + spec.name + "' unit width differs from declared base units");
  }
  if (algebra_ && spec.declared_grades.is_known() && spec.declared_grades.max_grade() > algebra_->dim()) {
    throw Error(ErrorCode::GradeOutOfRange, "node '" + spec.name + "' declares grades " +
                                                spec.declared_grades.to_string() + " beyond d=" +
                                                std::to_string(algebra_->dim()));
  }
  NodeId id{static_cast<std::uint32_t>(nodes_.size())};
  PhgNode node;
  static_cast<NodeSpec&>(node) = std::move(spec);
  node.id = id;
  by_name_.emplace(node.name, id);
  nodes_.push_back(std::move(node));
  incoming_.emplace_back();
  outgoing_.emplace_back();
  return id;
}

EdgeId Phg::add_edge(EdgeSpec spec) {
  const EdgeId id{static_cast<std::uint32_t>(edges_.size())};
  if (spec.label.empty()) spec.label = "f" + std::to_string(id.value);
  if (by_label_.contains(spec.label)) throw Error(ErrorCode::DuplicateName, "duplicate edge label '" + spec.label + "'");
  auto known = [&](NodeId n) { return n.value < nodes_.size(); };
  if (!known(spec.target)) throw Error(ErrorCode::UnknownNode, "edge '" + spec.label + "' targets an unknown node");
  for (NodeId s : spec.sources) {
    if (!known(s)) throw Error(ErrorCode::UnknownNode, "edge '" + spec.label + "' has an unknown source");
  }
  check_arity(spec.kind, spec.sources.size(), spec.label);
  if (spec.kind == EdgeKind::GradeSelect && algebra_ && (spec.payload.grade < 0 || spec.payload.grade > algebra_->dim())) {
    throw Error(ErrorCode::GradeOutOfRange, "select grade " + std::to_string(spec.payload.grade) + " outside [0," +
                                                std::to_string(algebra_->dim()) + "]");
  }
  for (NodeId s : spec.sources) {
    if (s == spec.target) {
      throw Error(ErrorCode::CycleIntroduced, "edge '" + spec.label + "' lists its target '" + nodes_[s.value].name +
                                                  "' among its sources");
    }
    if (reaches(spec.target, s)) {
      throw Error(ErrorCode::CycleIntroduced, "edge '" + spec.label + "' closes a cycle through '" +
                                                  nodes_[s.value].name + "'");
    }
  }

  Hyperedge edge;
  static_cast<EdgeSpec&>(edge) = std::move(spec);
  edge.id = id;
  const std::uint64_t all = targets_.size() >= 64 ? ~0ull : ((1ull << targets_.size()) - 1);
  edge.reach = edge.reachability ? (*edge.reachability & all) : all;
  by_label_.emplace(edge.label, id);
  incoming_[edge.target.value].push_back(id);
  std::vector<NodeId> seen;
  for (NodeId s : edge.sources) {
    if (std::find(seen.begin(), seen.end(), s) != seen.end()) continue;
    seen.push_back(s);
    outgoing_[s.value].push_back(id);
  }
  edges_.push_back(std::move(edge));
  return id;
}

const PhgNode& Phg::node(NodeId id) const {
  if (id.value >= nodes_.size()) throw Error(ErrorCode::UnknownNode, "node id " + std::to_string(id.value));
  return nodes_[id.value];
}

const Hyperedge& Phg::edge(EdgeId id) const {
  if (id.value >= edges_.size()) throw Error(ErrorCode::InvalidArgument, "edge id " + std::to_string(id.value));
  return edges_[id.value];
}

std::optional<NodeId> Phg::find_node(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

std::optional<EdgeId> Phg::find_edge(std::string_view label) const {
  auto it = by_label_.find(std::string(label));
  if (it == by_label_.end()) return std::nullopt;
  return it->second;
}

std::vector<EdgeId> Phg::producers(NodeId id) const {
  std::vector<EdgeId> out;
  for (EdgeId e : incoming_[id.value]) {
    if (is_inference_kind(edges_[e.value].kind)) out.push_back(e);
  }
  return out;
}

bool Phg::reaches(NodeId from, NodeId to) const {
  if (from == to) return true;
  std::vector<char> seen(nodes_.size(), 0);
  std::vector<NodeId> stack{from};
  seen[from.value] = 1;
  while (!stack.empty()) {
    NodeId n = stack.back();
    stack.pop_back();
    for (EdgeId e : outgoing_[n.value]) {
      NodeId t = edges_[e.value].target;
      if (t == to) return true;
      if (!seen[t.value]) {
        seen[t.value] = 1;
        stack.push_back(t);
      }
    }
  }
  return false;
}

std::vector<NodeId> Phg::topological_order() const {
  std::vector<std::size_t> indegree(nodes_.size(), 0);
  for (const Hyperedge& e : edges_) {
    std::vector<NodeId> seen;
    for (NodeId s : e.sources) {
      if (std::find(seen.begin(), seen.end(), s) != seen.end()) continue;
      seen.push_back(s);
      ++indegree[e.target.value];
    }
  }
  // Min-heap on id keeps the order deterministic.
  std::priority_queue<std::uint32_t, std::vector<std::uint32_t>, std::greater<>> ready;
  for (std::uint32_t i = 0; i < nodes_.size(); ++i) {
    if (indegree[i] == 0) ready.push(i);
  }
  std::vector<NodeId> order;
  order.reserve(nodes_.size());
  while (!ready.empty()) {
    NodeId n{ready.top()};
    ready.pop();
    order.push_back(n);
    for (EdgeId e : outgoing_[n.value]) {
      if (--indegree[edges_[e.value].target.value] == 0) ready.push(edges_[e.value].target.value);
    }
  }
  return order;
}

BinaryGraph to_binary_graph(const Phg& phg) {
  BinaryGraph g{phg.algebra(), phg.base_units(), phg.targets(), {}, {}};
  for (const PhgNode& n : phg.nodes()) g.nodes.push_back(static_cast<const NodeSpec&>(n));
  for (const Hyperedge& e : phg.edges()) {
    if (e.sources.size() != 1) {
      throw Error(ErrorCode::ArityMismatch, "edge '" + e.label + "' has " + std::to_string(e.sources.size()) +
                                                " sources; a binary view needs exactly one");
    }
    g.edges.push_back(BinaryEdge{e.sources[0], e.target, e.kind, e.payload, e.label, e.reach});
  }
  return g;
}

Phg from_binary_graph(const BinaryGraph& graph) {
  Phg phg(graph.algebra);
  phg.set_base_units(graph.base_units);
  phg.set_targets(graph.targets);
  for (const NodeSpec& n : graph.nodes) phg.add_node(n);
  for (const BinaryEdge& e : graph.edges) {
    phg.add_edge(EdgeSpec{e.label, e.kind, {e.from}, e.to, e.payload, e.reach});
  }
  return phg;
}

}  // namespace phg
