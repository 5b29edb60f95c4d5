// Random program generators for property tests.
#pragma once

#include <algorithm>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "phg/hypergraph.hpp"
#include "phg/units.hpp"

namespace gen {

struct DagOptions {
  std::size_t nodes = 50;
  double input_rate = 0.2;       // fraction of nodes created as declared inputs
  double undeclared_rate = 0.0;  // inputs left without a grade declaration
  int max_extra_producers = 0;   // additional producers per derived node
};

// Acyclic PHG over Cl(3,0,1): inputs are declared pure-grade, every other
// node is produced by one random inference edge over earlier nodes.
inline phg::Phg random_dag(std::mt19937_64& rng, const DagOptions& opt) {
  phg::Phg g(phg::build_algebra({3, 0, 1}));
  const int d = 4;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> grade(0, d);
  std::vector<phg::NodeId> ids;
  auto pick = [&]() { return ids[std::uniform_int_distribution<std::size_t>(0, ids.size() - 1)(rng)]; };
  auto add_producer = [&](phg::NodeId target) {
    static const phg::EdgeKind kinds[] = {phg::EdgeKind::GeometricProduct, phg::EdgeKind::Outer, phg::EdgeKind::Inner,
                                          phg::EdgeKind::Regressive,       phg::EdgeKind::Join,  phg::EdgeKind::GradeSelect,
                                          phg::EdgeKind::Norm,             phg::EdgeKind::Sandwich};
    phg::EdgeSpec e;
    e.kind = kinds[std::uniform_int_distribution<int>(0, 7)(rng)];
    e.target = target;
    int arity = 2;
    if (e.kind == phg::EdgeKind::GradeSelect || e.kind == phg::EdgeKind::Norm) arity = 1;
    if (e.kind == phg::EdgeKind::Join) arity = std::uniform_int_distribution<int>(2, 3)(rng);
    if (e.kind == phg::EdgeKind::GradeSelect) e.payload.grade = grade(rng);
    for (int i = 0; i < arity; ++i) e.sources.push_back(pick());
    g.add_edge(std::move(e));
  };
  for (std::size_t i = 0; i < opt.nodes; ++i) {
    phg::NodeSpec n;
    n.name = "n" + std::to_string(i);
    const bool input = ids.size() < 2 || u(rng) < opt.input_rate;
    if (input && u(rng) >= opt.undeclared_rate) n.declared_grades = phg::GradeSet::singleton(grade(rng));
    phg::NodeId id = g.add_node(std::move(n));
    if (!input) {
      add_producer(id);
      int extra = opt.max_extra_producers > 0 ? std::uniform_int_distribution<int>(0, opt.max_extra_producers)(rng) : 0;
      for (int k = 0; k < extra; ++k) add_producer(id);
    }
    ids.push_back(id);
  }
  return g;
}

// A dimensioned program whose true unit for every node is known. Inputs
// carry random declared units; derived nodes are GP/outer/transfer of
// earlier nodes. When `contradiction` is set, one transfer edge between two
// nodes of different unit is inserted at a random point in edge order
// (needs nodes >= 3).
struct DimProgram {
  phg::Phg phg;
  std::vector<phg::UnitVector> truth;      // per node
  std::optional<phg::EdgeId> injected;
};

inline DimProgram random_dim_program(std::mt19937_64& rng, std::size_t nodes, bool contradiction,
                                     double declare_derived = 0.2) {
  DimProgram out;
  out.phg = phg::Phg(phg::build_algebra({3, 0, 0}));
  const std::vector<std::string> bases{"m", "kg", "s"};
  out.phg.set_base_units(bases);
  std::uniform_int_distribution<int> exp(-2, 2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::size_t inject_at =
      contradiction ? std::uniform_int_distribution<std::size_t>(std::max<std::size_t>(2, nodes / 3), nodes - 1)(rng) : nodes;
  auto earlier = [&](std::size_t below) { return std::uniform_int_distribution<std::size_t>(0, below - 1)(rng); };

  for (std::size_t i = 0; i < nodes; ++i) {
    if (i >= inject_at && !out.injected) {
      // Two earlier nodes with different units, joined by a transfer; retried
      // at later nodes while every earlier unit is the same.
      for (int attempt = 0; attempt < 1000 && !out.injected; ++attempt) {
        std::size_t a = earlier(i), b = earlier(i);
        if (a >= b || out.truth[a] == out.truth[b]) continue;
        phg::EdgeSpec e;
        e.kind = phg::EdgeKind::Transfer;
        e.sources = {phg::NodeId{static_cast<std::uint32_t>(a)}};
        e.target = phg::NodeId{static_cast<std::uint32_t>(b)};
        e.label = "injected";
        out.injected = out.phg.add_edge(e);
      }
    }
    phg::NodeSpec n;
    n.name = "d" + std::to_string(i);
    phg::UnitVector unit = phg::UnitVector::dimensionless(bases.size());
    const bool input = i < 3 || u(rng) < 0.3;
    phg::EdgeSpec e;
    if (input) {
      for (auto& x : unit.exponents) x = exp(rng);
      n.dimension = unit;
    } else {
      double k = u(rng);
      e.kind = k < 0.45 ? phg::EdgeKind::GeometricProduct : k < 0.9 ? phg::EdgeKind::Outer : phg::EdgeKind::Transfer;
      std::size_t a = earlier(i), b = earlier(i);
      e.sources.push_back(phg::NodeId{static_cast<std::uint32_t>(a)});
      unit = out.truth[a];
      if (e.kind != phg::EdgeKind::Transfer) {
        e.sources.push_back(phg::NodeId{static_cast<std::uint32_t>(b)});
        unit += out.truth[b];
      }
      if (u(rng) < declare_derived) n.dimension = unit;
    }
    phg::NodeId id = out.phg.add_node(std::move(n));
    if (!input) {
      e.target = id;
      out.phg.add_edge(std::move(e));
    }
    out.truth.push_back(unit);
  }
  return out;
}

// Value-carrying program over Cl(3,0,0) for evaluation tests. Inputs get
// declared grades; derived nodes use product, join, select, sandwich,
// transfer and (when `norms`) metric-norm edges over earlier nodes. The
// Euclidean signature keeps every nonzero norm away from the kink at zero.
struct SmoothProgram {
  phg::Phg phg;
  std::vector<phg::NodeId> inputs;
};

inline SmoothProgram random_smooth_program(std::mt19937_64& rng, std::size_t nodes, bool norms) {
  SmoothProgram out;
  out.phg = phg::Phg(phg::build_algebra({3, 0, 0}));
  static const phg::GradeSet input_grades[] = {
      phg::GradeSet::singleton(0), phg::GradeSet::singleton(1), phg::GradeSet::singleton(2),
      phg::GradeSet::of({0, 2}), phg::GradeSet::of({1, 3})};
  std::vector<phg::EdgeKind> kinds{phg::EdgeKind::GeometricProduct, phg::EdgeKind::Outer,    phg::EdgeKind::Inner,
                                   phg::EdgeKind::Regressive,       phg::EdgeKind::Join,     phg::EdgeKind::GradeSelect,
                                   phg::EdgeKind::Sandwich,         phg::EdgeKind::Transfer};
  if (norms) kinds.push_back(phg::EdgeKind::Norm);
  std::vector<phg::NodeId> ids;
  auto pick = [&]() { return ids[std::uniform_int_distribution<std::size_t>(0, ids.size() - 1)(rng)]; };
  const std::size_t n_inputs = std::min<std::size_t>(nodes, std::uniform_int_distribution<std::size_t>(2, 3)(rng));
  for (std::size_t i = 0; i < nodes; ++i) {
    phg::NodeSpec n;
    n.name = "v" + std::to_string(i);
    if (i < n_inputs) n.declared_grades = input_grades[std::uniform_int_distribution<int>(0, 4)(rng)];
    phg::NodeId id = out.phg.add_node(std::move(n));
    if (i < n_inputs) {
      out.inputs.push_back(id);
    } else {
      phg::EdgeSpec e;
      e.kind = kinds[std::uniform_int_distribution<std::size_t>(0, kinds.size() - 1)(rng)];
      e.target = id;
      int arity = 2;
      if (e.kind == phg::EdgeKind::GradeSelect || e.kind == phg::EdgeKind::Norm || e.kind == phg::EdgeKind::Transfer) arity = 1;
      if (e.kind == phg::EdgeKind::Join) arity = std::uniform_int_distribution<int>(2, 3)(rng);
      if (e.kind == phg::EdgeKind::GradeSelect) e.payload.grade = std::uniform_int_distribution<int>(0, 3)(rng);
      for (int k = 0; k < arity; ++k) e.sources.push_back(pick());
      out.phg.add_edge(std::move(e));
    }
    ids.push_back(id);
  }
  return out;
}

}  // namespace gen
