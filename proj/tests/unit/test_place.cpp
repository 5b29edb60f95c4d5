#include <gtest/gtest.h>

#include <functional>

#include "phg/error.hpp"
#include "phg/place.hpp"
#include "support/oracles.hpp"

using namespace phg;

namespace {

TargetModel grid(int rows, int cols, int kb = 32, int dma = 2, std::string name = "t") {
  return TargetModel{std::move(name), rows, cols, kb, dma};
}

struct Pipeline {
  Phg g{build_algebra({3, 0, 1})};
  std::vector<NodeId> m;
  NodeId out;
  CoLocationAnnotation ann;

  // load -> {b, c} -> reduce, dma load/reduce, sync on reduce.
  explicit Pipeline(int footprint = 8, std::string prefix = "") {
    for (const char* n : {"load_A", "compute_B", "compute_C", "reduce_D"}) {
      NodeSpec s;
      s.name = prefix + n;
      m.push_back(g.add_node(s));
    }
    NodeSpec o;
    o.name = prefix + "out";
    out = g.add_node(o);
    ann.name = prefix + "tree";
    ann.members = m;
    ann.routes = {{m[0], m[1]}, {m[0], m[2]}, {m[1], m[3]}, {m[2], m[3]}};
    ann.dma_pairs = {{m[0], m[3]}};
    ann.sync = {m[3]};
    ann.footprint_kb = {footprint, footprint, footprint, footprint};
    add_group(g, ann, out);
  }

  static EdgeId add_group(Phg& g, const CoLocationAnnotation& ann, NodeId out) {
    EdgeSpec e;
    e.kind = EdgeKind::CoLocation;
    e.sources = ann.members;
    e.target = out;
    e.label = ann.name;
    e.payload.colocation = ann;
    return g.add_edge(e);
  }
};

// Groups of four plain members added to one graph.
Phg many_groups(int count, BlockMode mode = BlockMode::Rectangle, int members = 4) {
  Phg g(build_algebra({3, 0, 1}));
  for (int k = 0; k < count; ++k) {
    CoLocationAnnotation ann;
    ann.name = "g" + std::to_string(k);
    ann.mode = mode;
    for (int i = 0; i < members; ++i) {
      NodeSpec s;
      s.name = ann.name + "_" + std::to_string(i);
      ann.members.push_back(g.add_node(s));
    }
    NodeSpec o;
    o.name = ann.name + "_out";
    Pipeline::add_group(g, ann, g.add_node(o));
  }
  return g;
}

}  // namespace

TEST(Feasibility, ReductionTreeTargets) {
  Pipeline p;
  EXPECT_TRUE(check_group(p.g, p.ann, grid(2, 2)).feasible());
  Feasibility line = check_group(p.g, p.ann, grid(1, 3));
  ASSERT_FALSE(line.feasible());
  EXPECT_EQ(*line.reason, Infeasibility::BlockTooLarge);

  Pipeline heavy(40);
  Feasibility mem = check_group(heavy.g, heavy.ann, grid(2, 2));
  ASSERT_FALSE(mem.feasible());
  EXPECT_EQ(*mem.reason, Infeasibility::MemoryExceeded);

  std::vector<TargetModel> targets{grid(2, 2, 32, 2, "a"), grid(1, 3, 32, 2, "b")};
  FeasibilityMatrix m = check_feasibility(p.g, targets);
  ASSERT_EQ(m.cells.size(), 1u);
  ASSERT_EQ(m.cells[0].size(), 2u);
  EXPECT_TRUE(m.cells[0][0].feasible());
  EXPECT_FALSE(m.cells[0][1].feasible());
}

TEST(Feasibility, ChannelsAndRoutes) {
  Pipeline p;
  CoLocationAnnotation busy = p.ann;
  busy.dma_pairs = {{p.m[0], p.m[3]}, {p.m[0], p.m[1]}, {p.m[0], p.m[2]}};
  Feasibility c = check_group(p.g, busy, grid(2, 2, 32, 2));
  ASSERT_FALSE(c.feasible());
  EXPECT_EQ(*c.reason, Infeasibility::ChannelsExceeded);
  EXPECT_TRUE(check_group(p.g, busy, grid(2, 2, 32, 3)).feasible());

  CoLocationAnnotation loop = p.ann;
  loop.routes.push_back({p.m[3], p.m[0]});
  EXPECT_EQ(*check_group(p.g, loop, grid(2, 2)).reason, Infeasibility::RouteUnroutable);

  CoLocationAnnotation one = p.ann;
  one.mode = BlockMode::SingleTile;
  EXPECT_EQ(*check_group(p.g, one, grid(2, 2)).reason, Infeasibility::RouteUnroutable);
  one.routes.clear();
  one.dma_pairs.clear();
  EXPECT_TRUE(check_group(p.g, one, grid(1, 1)).feasible());
  one.footprint_kb = {10, 10, 10, 10};
  EXPECT_EQ(*check_group(p.g, one, grid(1, 1)).reason, Infeasibility::MemoryExceeded);

  CoLocationAnnotation column = p.ann;
  column.mode = BlockMode::Column;
  EXPECT_EQ(*check_group(p.g, column, grid(2, 2)).reason, Infeasibility::BlockTooLarge);
  EXPECT_TRUE(check_group(p.g, column, grid(4, 1)).feasible());
  EXPECT_THROW(check_group(p.g, p.ann, grid(0, 2)), Error);
}

TEST(Feasibility, MixedReachability) {
  Phg g(build_algebra({3, 0, 1}));
  g.set_targets({"cpu", "npu"});
  NodeSpec s;
  s.name = "x";
  s.declared_grades = GradeSet::singleton(1);
  NodeId x = g.add_node(s);
  std::vector<NodeId> members;
  for (int i = 0; i < 3; ++i) {
    NodeSpec m;
    m.name = "m" + std::to_string(i);
    members.push_back(g.add_node(m));
    EdgeSpec e;
    e.kind = EdgeKind::Outer;
    e.sources = {x, x};
    e.target = members.back();
    e.reachability = i == 0 ? 0b01 : 0b11;
    g.add_edge(e);
  }
  CoLocationAnnotation ann;
  ann.name = "grp";
  ann.members = members;
  NodeSpec o;
  o.name = "o";
  Pipeline::add_group(g, ann, g.add_node(o));
  std::vector<TargetModel> targets{grid(2, 3, 32, 2, "cpu"), grid(2, 3, 32, 2, "npu")};
  FeasibilityMatrix m = check_feasibility(g, targets);
  EXPECT_TRUE(m.cells[0][0].feasible());
  ASSERT_FALSE(m.cells[0][1].feasible());
  EXPECT_EQ(*m.cells[0][1].reason, Infeasibility::MixedReachability);
}

TEST(Assign, ReductionTreePlan) {
  Pipeline p;
  TilePlan plan = assign(p.g, grid(3, 3));
  ASSERT_EQ(plan.groups.size(), 1u);
  const GroupPlacement& gp = plan.groups[0];
  EXPECT_EQ(gp.rows, 2);
  EXPECT_EQ(gp.cols, 2);
  EXPECT_EQ(gp.origin, (Tile{0, 0}));
  EXPECT_EQ(gp.schedule, p.m);
  ASSERT_EQ(gp.barriers.size(), 1u);
  EXPECT_EQ(gp.barriers[0].member, p.m[3]);
  EXPECT_EQ(gp.barriers[0].waits_for, (std::vector<NodeId>{p.m[1], p.m[2]}));
  ASSERT_EQ(gp.channels.size(), 1u);
  EXPECT_EQ(gp.channels[0].channel, 0);
  std::vector<Tile> tiles;
  for (auto& [n, t] : gp.assignment) tiles.push_back(t);
  EXPECT_TRUE(oracle::forms_rectangle(tiles, grid(3, 3)));
  EXPECT_EQ(gp.assignment.front().second, (Tile{0, 0}));
  EXPECT_EQ(gp.assignment.back().second, (Tile{1, 1}));
  EXPECT_TRUE(validate_plan(p.g, grid(3, 3), plan).empty());
  EXPECT_EQ(assign(p.g, grid(3, 3)).groups[0].assignment, gp.assignment);
}

TEST(Assign, FirstFitPacking) {
  TilePlan one = assign(many_groups(1), grid(4, 4));
  EXPECT_EQ(one.groups[0].origin, (Tile{0, 0}));

  TilePlan two = assign(many_groups(2), grid(2, 4));
  ASSERT_EQ(two.groups.size(), 2u);
  EXPECT_EQ(two.groups[0].origin, (Tile{0, 0}));
  EXPECT_EQ(two.groups[1].origin, (Tile{0, 2}));
  EXPECT_EQ(two.groups[1].rows, 2);

  Phg five = many_groups(5);
  EXPECT_TRUE(validate_plan(five, grid(4, 4), assign(many_groups(4), grid(4, 4))).empty());
  try {
    assign(five, grid(4, 4));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PlacementFailed);
    EXPECT_NE(std::string(e.what()).find("g4"), std::string::npos) << e.what();
  }
}

TEST(Assign, PlansRevalidate) {
  for (int count = 1; count <= 6; ++count) {
    for (BlockMode mode : {BlockMode::Rectangle, BlockMode::Column, BlockMode::SingleTile}) {
      Phg g = many_groups(count, mode, 3);
      TargetModel t = grid(3, 6);
      try {
        TilePlan plan = assign(g, t);
        EXPECT_TRUE(validate_plan(g, t, plan).empty());
      } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::PlacementFailed);
      }
    }
  }
}

TEST(Clique, PairCounts) {
  Pipeline p;
  EXPECT_EQ(clique_relaxation(p.ann).size(), 6u);
  CoLocationAnnotation three = p.ann;
  three.members.resize(3);
  EXPECT_EQ(clique_relaxation(three).size(), 3u);
  three.members.resize(2);
  EXPECT_THROW(clique_relaxation(three), Error);
  EXPECT_EQ(pairwise_radius(4, grid(3, 3)), 1);
  EXPECT_EQ(pairwise_radius(4, grid(1, 4)), 3);
}

TEST(Clique, GroupOracleAgreement) {
  // satisfies_group against the direct rectangle oracle on every assignment
  // of 3 members to a 2x3 grid.
  TargetModel t = grid(2, 3);
  CoLocationAnnotation g;
  g.members = {NodeId{0}, NodeId{1}, NodeId{2}};
  const int cells = t.rows * t.cols;
  for (int code = 0; code < cells * cells * cells; ++code) {
    Assignment a;
    std::vector<Tile> tiles;
    int c = code;
    for (NodeId m : g.members) {
      Tile tile{(c % cells) / t.cols, (c % cells) % t.cols};
      c /= cells;
      a[m] = tile;
      tiles.push_back(tile);
    }
    ASSERT_EQ(satisfies_group(g, a, t), oracle::forms_rectangle(tiles, t));
  }
}

TEST(Clique, RelaxationIsStrictlyWeaker) {
  // Every 4-member assignment on 3x3: the group check implies all pairwise
  // checks, and some assignments satisfy the pairs alone.
  TargetModel t = grid(3, 3);
  CoLocationAnnotation g;
  g.members = {NodeId{0}, NodeId{1}, NodeId{2}, NodeId{3}};
  const auto pairs = clique_relaxation(g);
  const int radius = pairwise_radius(4, t);
  const int cells = t.rows * t.cols;
  int relaxed_only = 0;
  for (int code = 0; code < cells * cells * cells * cells; ++code) {
    Assignment a;
    int c = code;
    for (NodeId m : g.members) {
      a[m] = Tile{(c % cells) / t.cols, (c % cells) % t.cols};
      c /= cells;
    }
    bool all_pairs = true;
    for (const auto& p : pairs) all_pairs = all_pairs && satisfies_pair(p, a, radius);
    const bool group = satisfies_group(g, a, t);
    if (group) ASSERT_TRUE(all_pairs);
    relaxed_only += all_pairs && !group;
  }
  EXPECT_GT(relaxed_only, 0);
  // An L-shape plus a second member on its corner tile.
  Assignment l{{NodeId{0}, {0, 0}}, {NodeId{1}, {0, 1}}, {NodeId{2}, {1, 0}}, {NodeId{3}, {0, 0}}};
  EXPECT_FALSE(satisfies_group(g, l, t));
  for (const auto& p : pairs) EXPECT_TRUE(satisfies_pair(p, l, radius));
}
