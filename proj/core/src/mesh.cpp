#include "phg/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "phg/error.hpp"

namespace phg {

namespace {

std::vector<NodeId> sorted(std::vector<NodeId> v) {
  std::sort(v.begin(), v.end());
  return v;
}

std::string names(const Phg& phg, std::span<const NodeId> ids) {
  std::string s;
  for (NodeId id : ids) s += (s.empty() ? "" : ", ") + phg.node(id).name;
  return s;
}

// All subsets of `set` with `size` elements, in lexicographic order.
std::vector<std::vector<NodeId>> subsets(const std::vector<NodeId>& set, std::size_t size) {
  std::vector<std::vector<NodeId>> out;
  std::vector<char> pick(set.size(), 0);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(size), 1);
  do {
    std::vector<NodeId> s;
    for (std::size_t i = 0; i < set.size(); ++i) {
      if (pick[i]) s.push_back(set[i]);
    }
    out.push_back(std::move(s));
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return out;
}

void require_exact(const Multivector& x, const Multivector& y) {
  require_compatible(x, y);
  if (x.mode() != NumericMode::ExactRational) {
    throw Error(ErrorCode::ModeError,
                "exact incidence needs rational mode; use incidence_with_tolerance for float values");
  }
}

int pure_grade(const Multivector& x) {
  GradeSet g = x.grade_set();
  if (!g.is_singleton()) {
    throw Error(ErrorCode::GradeMismatch, "incidence needs non-zero pure-grade operands, got grades " + g.to_string());
  }
  return g.single();
}

Multivector incidence_residual(const Multivector& x, const Multivector& y) {
  const int p = pure_grade(x), q = pure_grade(y);
  return p + q <= x.algebra().dim() ? outer_product(x, y) : regressive_product(x, y);
}

}  // namespace

SimplexNode build_simplex(Phg& phg, std::span<const NodeId> vertices, std::string name) {
  if (!phg.algebra()) throw Error(ErrorCode::InvalidArgument, "simplex construction needs an algebra");
  const int d = phg.algebra()->dim();
  if (vertices.size() < 2) throw Error(ErrorCode::ArityMismatch, "a simplex needs at least 2 vertices");
  if (static_cast<int>(vertices.size()) > d) {
    throw Error(ErrorCode::TooManyVertices,
                std::to_string(vertices.size()) + " vertices exceed d=" + std::to_string(d));
  }
  std::set<NodeId> seen;
  for (NodeId v : vertices) {
    const PhgNode& n = phg.node(v);
    if (!seen.insert(v).second) throw Error(ErrorCode::DuplicateVertex, "vertex '" + n.name + "' repeats");
    if (n.declaration() != GradeSet::singleton(1)) {
      throw Error(ErrorCode::GradeMismatch, "vertex '" + n.name + "' has grades " + n.declaration().to_string() +
                                                ", expected {1}");
    }
  }
  if (name.empty()) {
    name = "s";
    for (NodeId v : vertices) name += "_" + phg.node(v).name;
  }
  NodeSpec spec;
  spec.name = name;
  spec.declared_grades = GradeSet::singleton(static_cast<int>(vertices.size()));
  NodeId node = phg.add_node(spec);
  EdgeSpec e;
  e.kind = EdgeKind::Join;
  e.sources.assign(vertices.begin(), vertices.end());
  e.target = node;
  EdgeId edge = phg.add_edge(e);
  return SimplexNode{node, static_cast<int>(vertices.size()) - 1, {vertices.begin(), vertices.end()}, edge};
}

std::vector<SimplexNode> find_simplices(const Phg& phg) {
  std::vector<SimplexNode> out;
  for (const Hyperedge& e : phg.edges()) {
    if (e.kind != EdgeKind::Join) continue;
    bool points = std::all_of(e.sources.begin(), e.sources.end(), [&](NodeId s) {
      return phg.node(s).declaration() == GradeSet::singleton(1);
    });
    if (points) out.push_back(SimplexNode{e.target, static_cast<int>(e.sources.size()) - 1, e.sources, e.id});
  }
  return out;
}

std::string_view to_string(MeshIssue issue) {
  switch (issue) {
    case MeshIssue::MissingBoundary: return "missing-boundary";
    case MeshIssue::TJunction: return "t-junction";
    case MeshIssue::DegenerateSimplex: return "degenerate-simplex";
    case MeshIssue::NonManifoldEdge: return "non-manifold-edge";
  }
  return "?";
}

std::vector<MeshDiagnostic> check_boundary_consistency(const Phg& phg, std::span<const SimplexNode> faces,
                                                       const MeshValues* values) {
  std::vector<MeshDiagnostic> out;
  const std::vector<SimplexNode> all = find_simplices(phg);

  // Vertices at identical coordinates collapse to the first such id.
  std::map<NodeId, NodeId> canon;
  if (values) {
    std::vector<NodeId> reps;
    for (const SimplexNode& f : faces) {
      for (NodeId v : f.vertices) {
        if (canon.contains(v)) continue;
        canon[v] = v;
        auto it = values->find(v);
        if (it == values->end()) continue;
        for (NodeId r : reps) {
          if (values->at(r) == it->second) {
            canon[v] = r;
            break;
          }
        }
        if (canon[v] == v) reps.push_back(v);
      }
    }
  }
  auto canonical = [&](const std::vector<NodeId>& vs) {
    std::vector<NodeId> c;
    for (NodeId v : vs) c.push_back(canon.contains(v) ? canon[v] : v);
    return sorted(c);
  };
  auto intersection = [](const std::vector<NodeId>& a, const std::vector<NodeId>& b) {
    std::vector<NodeId> s;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(s));
    return s;
  };

  for (std::size_t i = 0; i < faces.size(); ++i) {
    for (std::size_t j = i + 1; j < faces.size(); ++j) {
      const SimplexNode& f1 = faces[i];
      const SimplexNode& f2 = faces[j];
      if (f1.order != f2.order) continue;
      const std::size_t facet = static_cast<std::size_t>(f1.order);
      const std::vector<NodeId> shared = intersection(sorted(f1.vertices), sorted(f2.vertices));
      const std::vector<NodeId> coincident = intersection(canonical(f1.vertices), canonical(f2.vertices));
      const std::string pair = "'" + phg.node(f1.node).name + "' and '" + phg.node(f2.node).name + "'";

      if (shared.size() < facet && coincident.size() >= facet) {
        out.push_back(MeshDiagnostic{MeshIssue::TJunction, {f1.node, f2.node},
                                     pair + " meet at coincident vertices with distinct ids"});
        continue;
      }
      if (shared.size() != facet) continue;

      std::vector<NodeId> edges;
      for (const SimplexNode& s : all) {
        if (s.order + 1 == static_cast<int>(facet) && sorted(s.vertices) == shared) edges.push_back(s.node);
      }
      if (edges.empty()) {
        out.push_back(MeshDiagnostic{MeshIssue::MissingBoundary, {f1.node, f2.node},
                                     pair + " share vertices {" + names(phg, shared) + "} but no boundary node exists"});
        continue;
      }
      if (edges.size() > 1) {
        std::vector<NodeId> ids{f1.node, f2.node};
        ids.insert(ids.end(), edges.begin(), edges.end());
        out.push_back(MeshDiagnostic{MeshIssue::TJunction, ids,
                                     pair + " share {" + names(phg, shared) + "} through distinct boundary nodes " +
                                         names(phg, edges)});
        continue;
      }
      bool related = false;
      for (EdgeId eid : phg.incoming(edges[0])) {
        const Hyperedge& e = phg.edge(eid);
        if (e.kind != EdgeKind::Boundary) continue;
        related |= (e.sources[0] == f1.node && e.sources[1] == f2.node) ||
                   (e.sources[0] == f2.node && e.sources[1] == f1.node);
      }
      if (!related) {
        out.push_back(MeshDiagnostic{MeshIssue::MissingBoundary, {f1.node, f2.node, edges[0]},
                                     pair + " share '" + phg.node(edges[0]).name +
                                         "' without a boundary relation stating it"});
      }
    }
  }

  std::map<std::vector<NodeId>, std::vector<NodeId>> facet_faces;
  for (const SimplexNode& f : faces) {
    for (auto& s : subsets(sorted(f.vertices), static_cast<std::size_t>(f.order))) facet_faces[s].push_back(f.node);
  }
  for (auto& [facet, owners] : facet_faces) {
    if (owners.size() <= 2) continue;
    out.push_back(MeshDiagnostic{MeshIssue::NonManifoldEdge, owners,
                                 "{" + names(phg, facet) + "} is shared by " + std::to_string(owners.size()) +
                                     " faces: " + names(phg, owners)});
  }

  if (values) {
    for (const SimplexNode& f : faces) {
      std::vector<Multivector> pts;
      for (NodeId v : f.vertices) {
        auto it = values->find(v);
        if (it == values->end()) break;
        pts.push_back(it->second);
      }
      if (pts.size() != f.vertices.size()) continue;
      if (outer_join(pts).is_zero()) {
        out.push_back(MeshDiagnostic{MeshIssue::DegenerateSimplex, {f.node},
                                     "'" + phg.node(f.node).name + "' is exactly degenerate (its join is zero)"});
      }
    }
  }
  return out;
}

std::vector<MeshDiagnostic> check_boundary_consistency(const Phg& phg, const MeshValues* values) {
  std::vector<SimplexNode> all = find_simplices(phg);
  int top = 0;
  for (const SimplexNode& s : all) top = std::max(top, s.order);
  std::vector<SimplexNode> faces;
  for (const SimplexNode& s : all) {
    if (s.order == top && top >= 2) faces.push_back(s);
  }
  return check_boundary_consistency(phg, faces, values);
}

Multivector point(std::shared_ptr<const Algebra> alg, std::span<const Scalar> coords) {
  if (alg->dim() < 1 || alg->generator_square(0) != 0) {
    throw Error(ErrorCode::InvalidArgument, "points need a degenerate generator e0");
  }
  if (static_cast<int>(coords.size()) != alg->dim() - 1) {
    throw Error(ErrorCode::InvalidArgument, "expected " + std::to_string(alg->dim() - 1) + " coordinates, got " +
                                                std::to_string(coords.size()));
  }
  const NumericMode mode = coords.empty() ? NumericMode::Float64 : coords[0].mode();
  Multivector p = Multivector::blade(alg, Blade{1}, Scalar::one(mode));
  for (std::size_t i = 0; i < coords.size(); ++i) p.set(Blade{2u << i}, coords[i]);
  return p;
}

bool incidence(const Multivector& x, const Multivector& y) {
  require_exact(x, y);
  return incidence_residual(x, y).is_zero();
}

bool incidence_with_tolerance(const Multivector& x, const Multivector& y, double tolerance) {
  require_compatible(x, y);
  Multivector r = incidence_residual(x, y);
  for (auto& [mask, c] : r.terms()) {
    if (std::fabs(c.to_double()) > tolerance) return false;
  }
  return true;
}

std::string_view to_string(Orientation o) {
  switch (o) {
    case Orientation::On: return "on";
    case Orientation::Positive: return "positive";
    case Orientation::Negative: return "negative";
  }
  return "?";
}

Orientation orientation(const Multivector& pt, const Multivector& plane) {
  require_exact(pt, plane);
  const int d = pt.algebra().dim();
  if (pure_grade(pt) != 1 || pure_grade(plane) != d - 1) {
    throw Error(ErrorCode::GradeMismatch, "orientation needs a grade-1 point and a grade-" + std::to_string(d - 1) +
                                              " plane");
  }
  int s = regressive_product(pt, plane).get(Blade{0}).sign();
  return s == 0 ? Orientation::On : s > 0 ? Orientation::Positive : Orientation::Negative;
}

MeshImport import_mesh(std::string_view text, std::shared_ptr<const Algebra> alg, NumericMode mode) {
  MeshImport out{Phg(alg), {}, {}, {}};
  std::vector<std::vector<std::size_t>> face_lists;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw Error(ErrorCode::SyntaxError, "mesh line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "v") {
      std::vector<Scalar> coords;
      std::string tok;
      while (ls >> tok) coords.push_back(Scalar::parse(tok, mode));
      if (static_cast<int>(coords.size()) != alg->dim() - 1) fail("vertex needs " + std::to_string(alg->dim() - 1) + " coordinates");
      NodeSpec spec;
      spec.name = "v" + std::to_string(out.vertices.size() + 1);
      spec.declared_grades = GradeSet::singleton(1);
      NodeId id = out.phg.add_node(spec);
      out.vertices.push_back(id);
      out.values.emplace(id, point(alg, coords));
    } else if (tag == "f") {
      std::vector<std::size_t> idx;
      long v;
      while (ls >> v) {
        if (v < 1 || static_cast<std::size_t>(v) > out.vertices.size()) fail("vertex index " + std::to_string(v) + " out of range");
        idx.push_back(static_cast<std::size_t>(v - 1));
      }
      if (idx.size() < 2) fail("face needs at least 2 vertices");
      face_lists.push_back(idx);
    } else {
      fail("unknown record '" + tag + "'");
    }
  }

  for (std::size_t i = 0; i < face_lists.size(); ++i) {
    std::vector<NodeId> vs;
    for (std::size_t k : face_lists[i]) vs.push_back(out.vertices[k]);
    out.faces.push_back(build_simplex(out.phg, vs, "f" + std::to_string(i + 1)));
  }

  std::map<std::vector<NodeId>, std::vector<std::size_t>> facet_faces;
  for (std::size_t i = 0; i < out.faces.size(); ++i) {
    const SimplexNode& f = out.faces[i];
    if (f.order < 2) continue;
    for (auto& s : subsets(sorted(f.vertices), static_cast<std::size_t>(f.order))) facet_faces[s].push_back(i);
  }
  for (auto& [facet, owners] : facet_faces) {
    if (owners.size() < 2) continue;
    std::string name = "e";
    for (NodeId v : facet) name += "_" + out.phg.node(v).name;
    SimplexNode edge = build_simplex(out.phg, facet, name);
    for (std::size_t a = 0; a < owners.size(); ++a) {
      for (std::size_t b = a + 1; b < owners.size(); ++b) {
        EdgeSpec e;
        e.kind = EdgeKind::Boundary;
        e.sources = {out.faces[owners[a]].node, out.faces[owners[b]].node};
        e.target = edge.node;
        out.phg.add_edge(e);
      }
    }
  }
  return out;
}

}  // namespace phg
