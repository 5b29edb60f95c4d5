#include <benchmark/benchmark.h>

#include <random>

#include "phg/algebra.hpp"
#include "phg/dims.hpp"
#include "phg/hypergraph.hpp"
#include "phg/kernel.hpp"
#include "phg/multivector.hpp"
#include "phg/saturate.hpp"
#include "phg/units.hpp"

using namespace phg;

namespace {

Multivector random_mv(std::mt19937_64& rng, const std::shared_ptr<const Algebra>& alg, const GradeSet& grades) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Multivector x(alg, NumericMode::Float64);
  for (Blade b : alg->blades()) {
    if (grades.contains(b.grade())) x.set(b, Scalar(u(rng)));
  }
  return x;
}

// Chain-heavy acyclic graph: every derived node reads two earlier nodes.
Phg random_graph(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Phg g(build_algebra({3, 0, 1}));
  const EdgeKind kinds[] = {EdgeKind::GeometricProduct, EdgeKind::Outer, EdgeKind::Inner, EdgeKind::Regressive};
  for (std::size_t i = 0; i < n; ++i) {
    NodeSpec s;
    s.name = "n" + std::to_string(i);
    if (i < 8) s.declared_grades = GradeSet::singleton(static_cast<int>(i % 5));
    NodeId id = g.add_node(std::move(s));
    if (i < 8) continue;
    std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(i - 1));
    EdgeSpec e;
    e.kind = kinds[rng() % 4];
    e.sources = {NodeId{pick(rng)}, NodeId{pick(rng)}};
    e.target = id;
    g.add_edge(std::move(e));
  }
  return g;
}

}  // namespace

static void BM_CayleyBuild(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_algebra({d - 1, 0, 1}));
}
BENCHMARK(BM_CayleyBuild)->DenseRange(3, 6);

static void BM_DenseProduct(benchmark::State& state) {
  auto pga = build_algebra({3, 0, 1});
  std::mt19937_64 rng(1);
  Multivector a = random_mv(rng, pga, GradeSet::singleton(2)), b = random_mv(rng, pga, GradeSet::singleton(1));
  for (auto _ : state) benchmark::DoNotOptimize(geometric_product(a, b));
}
BENCHMARK(BM_DenseProduct);

static void BM_KernelInterpreted(benchmark::State& state) {
  auto pga = build_algebra({3, 0, 1});
  std::mt19937_64 rng(1);
  KernelIR k = emit_kernel(*pga, ProductKind::GP, GradeSet::singleton(2), GradeSet::singleton(1));
  std::vector<Multivector> ops{random_mv(rng, pga, GradeSet::singleton(2)), random_mv(rng, pga, GradeSet::singleton(1))};
  for (auto _ : state) benchmark::DoNotOptimize(run_kernel(k, ops));
}
BENCHMARK(BM_KernelInterpreted);

static void BM_KernelCompiled(benchmark::State& state) {
  auto pga = build_algebra({3, 0, 1});
  KernelIR k = emit_kernel(*pga, ProductKind::GP, GradeSet::singleton(2), GradeSet::singleton(1));
  CompiledKernel c(k);
  std::vector<double> in(c.input_count(), 0.5), out(c.output_count()), scratch(c.slot_count());
  for (auto _ : state) {
    c.run(in.data(), out.data(), scratch.data());
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_KernelCompiled);

static void BM_Saturate(benchmark::State& state) {
  Phg g = random_graph(static_cast<std::size_t>(state.range(0)), 7);
  for (auto _ : state) benchmark::DoNotOptimize(saturate(g));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Saturate)->RangeMultiplier(10)->Range(100, 10000)->Complexity(benchmark::oN);

static void BM_DimsSolve(benchmark::State& state) {
  std::mt19937_64 rng(3);
  Phg g(build_algebra({3, 0, 0}));
  g.set_base_units({"m", "kg", "s"});
  const auto n = static_cast<std::size_t>(state.range(0));
  std::uniform_int_distribution<int> e(-2, 2);
  for (std::size_t i = 0; i < n; ++i) {
    NodeSpec s;
    s.name = "d" + std::to_string(i);
    if (i < 3) s.dimension = UnitVector{{e(rng), e(rng), e(rng)}};
    NodeId id = g.add_node(std::move(s));
    if (i < 3) continue;
    std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(i - 1));
    EdgeSpec k;
    k.kind = EdgeKind::GeometricProduct;
    k.sources = {NodeId{pick(rng)}, NodeId{pick(rng)}};
    k.target = id;
    g.add_edge(std::move(k));
  }
  DimSystem sys = collect_constraints(g);
  for (auto _ : state) benchmark::DoNotOptimize(solve(sys));
}
BENCHMARK(BM_DimsSolve)->Arg(50)->Arg(200);
BENCHMARK_MAIN();
