#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "phg/hypergraph.hpp"
#include "phg/multivector.hpp"

namespace phg {

/// Join target whose sources are grade-1 points.
struct SimplexNode {
  NodeId node;
  int order = 0;                  // k: k+1 vertices
  std::vector<NodeId> vertices;   // as listed on the join edge
  EdgeId edge;
};

/// Adds a join edge over the vertices and a target node of grade {|vertices|}.
/// Throws DuplicateVertex, GradeMismatch (vertex not grade {1}),
/// TooManyVertices (more than d), ArityMismatch (fewer than 2).
SimplexNode build_simplex(Phg& phg, std::span<const NodeId> vertices, std::string name = {});

/// Every join in the graph whose sources are all declared grade {1}.
std::vector<SimplexNode> find_simplices(const Phg& phg);

enum class MeshIssue { MissingBoundary, TJunction, DegenerateSimplex, NonManifoldEdge };
std::string_view to_string(MeshIssue issue);

struct MeshDiagnostic {
  MeshIssue kind;
  std::vector<NodeId> nodes;
  std::string message;
};

using MeshValues = std::map<NodeId, Multivector>;

/// Boundary sharing between faces is judged by node identity. Values, when
/// given, are used only to spot coincident vertices with distinct ids
/// (T-junctions) and exactly degenerate simplices.
std::vector<MeshDiagnostic> check_boundary_consistency(const Phg& phg, std::span<const SimplexNode> faces,
                                                       const MeshValues* values = nullptr);
/// Checks the highest-order simplices found in the graph.
std::vector<MeshDiagnostic> check_boundary_consistency(const Phg& phg, const MeshValues* values = nullptr);

/// Homogeneous point e0 + x·e1 + y·e2 + ... ; needs one degenerate generator
/// (bit 0) and d-1 coordinates.
Multivector point(std::shared_ptr<const Algebra> alg, std::span<const Scalar> coords);

/// Exact incidence of two pure-grade elements: their outer product vanishes
/// (grades summing to at most d) or their regressive product vanishes
/// (grades summing past d). Throws ModeError outside exact mode,
/// GradeMismatch for mixed-grade or zero operands.
bool incidence(const Multivector& x, const Multivector& y);
/// Same test with an explicit absolute tolerance on the residual coefficients;
/// accepts either mode.
bool incidence_with_tolerance(const Multivector& x, const Multivector& y, double tolerance);

enum class Orientation { On, Positive, Negative };
std::string_view to_string(Orientation o);

/// Sign of the scalar (point ∨ plane) for a point and a grade-(d-1) element.
/// Exact mode only.
Orientation orientation(const Multivector& point, const Multivector& plane);

struct MeshImport {
  Phg phg;
  std::vector<NodeId> vertices;
  std::vector<SimplexNode> faces;
  MeshValues values;  // vertex values
};

/// Indexed list: "v x y z" lines, then "f i j k ..." with 1-based indices.
/// Shared facets get an edge node and a boundary hyperedge per face pair.
MeshImport import_mesh(std::string_view text, std::shared_ptr<const Algebra> alg, NumericMode mode);

}  // namespace phg
