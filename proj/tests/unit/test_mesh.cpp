#include <gtest/gtest.h>

#include <algorithm>

#include "phg/error.hpp"
#include "phg/mesh.hpp"
#include "phg/saturate.hpp"
#include "support/oracles.hpp"

using namespace phg;

namespace {

const NumericMode Q = NumericMode::ExactRational;

Multivector pt(const std::shared_ptr<const Algebra>& alg, Rational x, Rational y, Rational z) {
  std::vector<Scalar> c{Scalar(x), Scalar(y), Scalar(z)};
  return point(alg, c);
}

Multivector join3(const Multivector& a, const Multivector& b, const Multivector& c) {
  std::vector<Multivector> v{a, b, c};
  return outer_join(v);
}

NodeId vertex(Phg& g, const std::string& name) {
  NodeSpec s;
  s.name = name;
  s.declared_grades = GradeSet::singleton(1);
  return g.add_node(std::move(s));
}

void relate(Phg& g, NodeId f1, NodeId f2, NodeId e) {
  EdgeSpec b;
  b.kind = EdgeKind::Boundary;
  b.sources = {f1, f2};
  b.target = e;
  g.add_edge(b);
}

bool has(const std::vector<MeshDiagnostic>& d, MeshIssue k) {
  return std::any_of(d.begin(), d.end(), [&](auto& x) { return x.kind == k; });
}

// Two triangles abc, acd sharing edge ac.
struct Square {
  Phg g{build_algebra({3, 0, 1})};
  NodeId a, b, c, d;
  SimplexNode f1, f2;
  Square(bool with_edge = true, bool with_relation = true) {
    a = vertex(g, "a");
    b = vertex(g, "b");
    c = vertex(g, "c");
    d = vertex(g, "d");
    std::vector<NodeId> t1{a, b, c}, t2{a, c, d}, e{a, c};
    f1 = build_simplex(g, t1, "f1");
    f2 = build_simplex(g, t2, "f2");
    if (with_edge) {
      SimplexNode edge = build_simplex(g, e, "ac");
      if (with_relation) relate(g, f1.node, f2.node, edge.node);
    }
  }
};

}  // namespace

TEST(Simplex, BuildAndInfer) {
  Phg g(build_algebra({3, 0, 1}));
  NodeId a = vertex(g, "a"), b = vertex(g, "b"), c = vertex(g, "c"), d = vertex(g, "d");
  std::vector<NodeId> tri{a, b, c}, seg{a, b};
  SimplexNode f = build_simplex(g, tri);
  EXPECT_EQ(f.order, 2);
  EXPECT_EQ(g.node(f.node).name, "s_a_b_c");
  EXPECT_EQ(g.node(f.node).declared_grades, GradeSet::singleton(3));
  SimplexNode e = build_simplex(g, seg);
  EXPECT_EQ(g.node(e.node).declared_grades, GradeSet::singleton(2));
  SaturationReport r = saturate(g);
  EXPECT_EQ(r.annotations[f.node.value].grades, GradeSet::singleton(3));
  EXPECT_FALSE(has_errors(r.diagnostics));
  EXPECT_EQ(find_simplices(g).size(), 2u);

  auto code = [&](std::vector<NodeId> vs) {
    try {
      build_simplex(g, vs);
    } catch (const Error& err) {
      return err.code();
    }
    return ErrorCode::InvalidArgument;
  };
  EXPECT_EQ(code({a, a, b}), ErrorCode::DuplicateVertex);
  EXPECT_EQ(code({a, f.node}), ErrorCode::GradeMismatch);
  EXPECT_EQ(code({a}), ErrorCode::ArityMismatch);
  NodeId x = vertex(g, "x");
  EXPECT_EQ(code({a, b, c, d, x}), ErrorCode::TooManyVertices);
}

TEST(Boundary, ProperSharingIsClean) {
  Square s;
  EXPECT_TRUE(check_boundary_consistency(s.g).empty());
}

TEST(Boundary, MissingEdgeOrRelation) {
  Square no_edge(false);
  auto d = check_boundary_consistency(no_edge.g);
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0].kind, MeshIssue::MissingBoundary);

  Square no_rel(true, false);
  auto r = check_boundary_consistency(no_rel.g);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].kind, MeshIssue::MissingBoundary);
}

TEST(Boundary, DuplicatedEdgeNodeIsTJunction) {
  Square s;
  std::vector<NodeId> e{s.a, s.c};
  SimplexNode dup = build_simplex(s.g, e, "ac_copy");
  relate(s.g, s.f1.node, s.f2.node, dup.node);
  auto d = check_boundary_consistency(s.g);
  ASSERT_TRUE(has(d, MeshIssue::TJunction));
  for (const MeshDiagnostic& m : d) EXPECT_FALSE(m.nodes.empty());
}

TEST(Boundary, CoincidentVerticesAreTJunction) {
  auto alg = build_algebra({3, 0, 1});
  Phg g(alg);
  NodeId a = vertex(g, "a"), b = vertex(g, "b"), c = vertex(g, "c"), d = vertex(g, "d");
  NodeId a2 = vertex(g, "a2"), c2 = vertex(g, "c2");
  std::vector<NodeId> t1{a, b, c}, t2{a2, c2, d};
  build_simplex(g, t1);
  build_simplex(g, t2);
  MeshValues v;
  v.emplace(a, pt(alg, 0, 0, 0));
  v.emplace(a2, pt(alg, 0, 0, 0));
  v.emplace(b, pt(alg, 1, 0, 0));
  v.emplace(c, pt(alg, 1, 1, 0));
  v.emplace(c2, pt(alg, 1, 1, 0));
  v.emplace(d, pt(alg, 0, 1, 0));
  EXPECT_TRUE(check_boundary_consistency(g).empty());
  EXPECT_TRUE(has(check_boundary_consistency(g, &v), MeshIssue::TJunction));
}

TEST(Boundary, OpenFanIsNonManifold) {
  Square s;
  NodeId e = vertex(s.g, "e");
  std::vector<NodeId> t3{s.a, s.c, e};
  build_simplex(s.g, t3, "f3");
  auto d = check_boundary_consistency(s.g);
  ASSERT_TRUE(has(d, MeshIssue::NonManifoldEdge));
  auto it = std::find_if(d.begin(), d.end(), [](auto& x) { return x.kind == MeshIssue::NonManifoldEdge; });
  EXPECT_EQ(it->nodes.size(), 3u);
}

TEST(Boundary, CollinearFaceIsDegenerate) {
  auto alg = build_algebra({3, 0, 1});
  Square s;
  MeshValues v;
  v.emplace(s.a, pt(alg, 0, 0, 0));
  v.emplace(s.b, pt(alg, 1, 1, 1));
  v.emplace(s.c, pt(alg, 2, 2, 2));
  v.emplace(s.d, pt(alg, 0, 1, 0));
  auto d = check_boundary_consistency(s.g, &v);
  ASSERT_TRUE(has(d, MeshIssue::DegenerateSimplex));
  // The collinear join is exactly zero, not merely small.
  EXPECT_TRUE(join3(v.at(s.a), v.at(s.b), v.at(s.c)).is_zero());
}

TEST(Import, IndexedTriangles) {
  auto alg = build_algebra({3, 0, 1});
  MeshImport m = import_mesh("v 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\nf 1 2 3\nf 1 3 4\n", alg, Q);
  EXPECT_EQ(m.vertices.size(), 4u);
  EXPECT_EQ(m.faces.size(), 2u);
  EXPECT_TRUE(m.phg.find_node("e_v1_v3"));
  EXPECT_TRUE(check_boundary_consistency(m.phg, m.faces, &m.values).empty());
  EXPECT_THROW(import_mesh("v 0 0 0\nf 1 2 3\n", alg, Q), Error);
  EXPECT_THROW(import_mesh("x 1\n", alg, Q), Error);
}

TEST(Measure, AreaMatchesCrossProduct) {
  auto alg = build_algebra({3, 0, 1});
  std::mt19937_64 rng(51);
  for (int i = 0; i < 200; ++i) {
    std::array<std::array<double, 3>, 3> p;
    std::array<std::array<Rational, 3>, 3> r;
    std::vector<Multivector> pts;
    for (auto k = 0; k < 3; ++k) {
      for (int j = 0; j < 3; ++j) {
        Scalar s = gen::rational(rng, Q);
        r[k][j] = s.rational();
        p[k][j] = s.to_double();
      }
      pts.push_back(pt(alg, r[k][0], r[k][1], r[k][2]));
    }
    NormValue a = simplex_measure(outer_join(pts), 2);
    EXPECT_EQ(a.squared.rational(), oracle::triangle_area_squared(r[0], r[1], r[2]));
    EXPECT_NEAR(a.value, oracle::triangle_area(p[0], p[1], p[2]), 1e-12 * (1 + a.value));
  }
  NormValue unit = simplex_measure(join3(pt(alg, 0, 0, 0), pt(alg, 1, 0, 0), pt(alg, 0, 1, 0)), 2);
  ASSERT_TRUE(unit.exact);
  EXPECT_EQ(*unit.exact, Scalar::from_ratio(1, 2, Q));
}

TEST(Measure, JoinAntisymmetryOverPermutations) {
  auto alg = build_algebra({3, 0, 1});
  std::vector<Multivector> v{pt(alg, 1, 2, 3), pt(alg, -1, 0, 2), pt(alg, 4, 1, -2)};
  Multivector ref = outer_join(v);
  std::array<int, 3> perm{0, 1, 2};
  do {
    std::vector<Multivector> w{v[perm[0]], v[perm[1]], v[perm[2]]};
    int inversions = (perm[0] > perm[1]) + (perm[0] > perm[2]) + (perm[1] > perm[2]);
    EXPECT_EQ(outer_join(w), inversions % 2 ? -ref : ref);
  } while (std::next_permutation(perm.begin(), perm.end()));
}

TEST(Incidence, OnAndOffPlane) {
  auto alg = build_algebra({3, 0, 1});
  Multivector plane = join3(pt(alg, 0, 0, 0), pt(alg, 1, 0, 0), pt(alg, 0, 1, 0));
  Multivector on = pt(alg, Rational(3, 7), Rational(-5, 2), 0);
  Multivector off = pt(alg, Rational(3, 7), Rational(-5, 2), Rational(1, 1000000));
  EXPECT_TRUE(incidence(on, plane));
  EXPECT_TRUE(incidence(plane, on));
  EXPECT_FALSE(incidence(off, plane));
  EXPECT_FALSE(incidence(plane, off));
  EXPECT_EQ(orientation(on, plane), Orientation::On);

  // A point on a line: grades 1 and 2 sum below d.
  Multivector line = outer_product(pt(alg, 0, 0, 0), pt(alg, 1, 1, 1));
  EXPECT_TRUE(incidence(pt(alg, 2, 2, 2), line));
  EXPECT_FALSE(incidence(pt(alg, 2, 2, 3), line));
  // A line in a plane: grades 2 and 3 sum past d.
  Multivector in_plane = outer_product(pt(alg, 0, 0, 0), pt(alg, 1, 2, 0));
  EXPECT_TRUE(incidence(in_plane, plane));
  EXPECT_FALSE(incidence(line, plane));
}

TEST(Incidence, ExactnessGate) {
  auto alg = build_algebra({3, 0, 1});
  std::vector<Scalar> c{Scalar(0.0), Scalar(0.0), Scalar(0.0)};
  Multivector p = point(alg, c);
  std::vector<Multivector> fpts{p, point(alg, std::vector<Scalar>{Scalar(1.0), Scalar(0.0), Scalar(0.0)}),
                                point(alg, std::vector<Scalar>{Scalar(0.0), Scalar(1.0), Scalar(0.0)})};
  Multivector plane = outer_join(fpts);
  try {
    incidence(p, plane);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ModeError);
  }
  EXPECT_THROW(orientation(p, plane), Error);
  EXPECT_TRUE(incidence_with_tolerance(p, plane, 1e-12));
  Multivector mixed = pt(alg, 0, 0, 0) + Multivector::scalar(alg, Scalar::one(Q));
  Multivector qplane = join3(pt(alg, 0, 0, 0), pt(alg, 1, 0, 0), pt(alg, 0, 1, 0));
  try {
    incidence(mixed, qplane);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::GradeMismatch);
  }
}

TEST(Orientation, MirrorAndRescale) {
  auto alg = build_algebra({3, 0, 1});
  std::mt19937_64 rng(52);
  for (int i = 0; i < 100; ++i) {
    std::vector<Multivector> basis;
    for (int k = 0; k < 3; ++k) {
      basis.push_back(pt(alg, gen::rational(rng, Q).rational(), gen::rational(rng, Q).rational(),
                         gen::rational(rng, Q).rational()));
    }
    Multivector plane = outer_join(basis);
    if (plane.is_zero()) continue;
    Rational x = gen::rational(rng, Q).rational(), y = gen::rational(rng, Q).rational(),
             z = gen::rational(rng, Q).rational();
    Multivector p = pt(alg, x, y, z);
    Orientation o = orientation(p, plane);
    Multivector scaled = p * Scalar(Rational(7, 3));
    EXPECT_EQ(orientation(scaled, plane), o);
    if (o == Orientation::On) continue;
    // Point reflection through a point of the plane lands on the other side.
    Multivector mirrored = basis[0] * Scalar::from_int(2, Q) - p;
    EXPECT_NE(orientation(mirrored, plane), o);
    EXPECT_NE(orientation(mirrored, plane), Orientation::On);
  }
}
