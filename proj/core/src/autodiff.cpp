#include "phg/autodiff.hpp"

#include <cmath>
#include <memory>
#include <tuple>

#include "phg/error.hpp"
#include "phg/kernel.hpp"

namespace phg {

ExactAccumulator::ExactAccumulator(NumericMode mode) : mode_(mode) {}

void ExactAccumulator::add_float(double x) {
  const double t = sum_ + x;
  if (std::fabs(sum_) >= std::fabs(x)) {
    compensation_ += (sum_ - t) + x;
  } else {
    compensation_ += (x - t) + sum_;
  }
  sum_ = t;
}

void ExactAccumulator::add(const Scalar& term) {
  if (term.mode() != mode_) throw Error(ErrorCode::ModeMismatch, "accumulator and term modes differ");
  ++count_;
  if (mode_ == NumericMode::ExactRational) {
    exact_ += term.rational();
  } else {
    add_float(term.float_value());
  }
}

void ExactAccumulator::add_product(const Scalar& a, const Scalar& b) {
  if (a.mode() != mode_ || b.mode() != mode_) throw Error(ErrorCode::ModeMismatch, "accumulator and term modes differ");
  ++count_;
  if (mode_ == NumericMode::ExactRational) {
    exact_ += a.rational() * b.rational();
    return;
  }
  const double x = a.float_value(), y = b.float_value();
  const double p = x * y;
  add_float(p);
  add_float(std::fma(x, y, -p));
}

Scalar ExactAccumulator::value() const {
  if (mode_ == NumericMode::ExactRational) return Scalar(exact_);
  return Scalar(sum_ + compensation_);
}

Scalar accumulate(NumericMode mode, std::span<const Scalar> terms) {
  ExactAccumulator acc(mode);
  for (const Scalar& t : terms) acc.add(t);
  return acc.value();
}

namespace {

struct Value {
  Multivector primal;
  std::optional<Multivector> tangent;
};

int reverse_sign(int grade) { return (grade * (grade - 1) / 2) % 2 ? -1 : 1; }

class Evaluator {
 public:
  Evaluator(const Phg& phg, const EvalOptions& options, bool dual)
      : phg_(phg), options_(options), dual_(dual) {
    if (!phg.algebra()) throw Error(ErrorCode::InvalidArgument, "evaluation needs an algebra");
  }

  std::map<NodeId, Value> run(const ValueMap& inputs, const ValueMap* direction) {
    const std::size_t n = phg_.node_count();
    // Which edge defines each node's value, and how many readers each value has.
    std::vector<std::optional<EdgeId>> source_edge(n);
    std::vector<char> is_input(n, 0);
    for (const PhgNode& node : phg_.nodes()) {
      auto in = phg_.incoming(node.id);
      if (in.empty()) {
        is_input[node.id.value] = 1;
        continue;
      }
      for (EdgeId e : in) {
        const EdgeKind k = phg_.edge(e).kind;
        if (is_inference_kind(k) || k == EdgeKind::Transfer) {
          source_edge[node.id.value] = e;
          break;
        }
      }
    }
    std::vector<std::size_t> readers(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (!source_edge[i]) continue;
      std::vector<NodeId> seen;
      for (NodeId s : phg_.edge(*source_edge[i]).sources) {
        if (std::find(seen.begin(), seen.end(), s) != seen.end()) continue;
        seen.push_back(s);
        ++readers[s.value];
      }
    }

    std::map<NodeId, Value> live;
    std::map<NodeId, Value> kept;
    for (NodeId id : phg_.topological_order()) {
      const PhgNode& node = phg_.node(id);
      std::optional<Value> v;
      if (is_input[id.value]) {
        auto it = inputs.find(id);
        if (it == inputs.end()) throw Error(ErrorCode::UnboundInput, "input '" + node.name + "' has no value");
        check_input(node, it->second);
        Multivector tangent = Multivector::zero(it->second.algebra_ptr(), it->second.mode());
        if (direction) {
          if (auto d = direction->find(id); d != direction->end()) {
            require_compatible(it->second, d->second);
            tangent = d->second;
          }
        }
        v = Value{it->second, dual_ ? std::optional<Multivector>(tangent) : std::nullopt};
      } else if (source_edge[id.value]) {
        const Hyperedge& e = phg_.edge(*source_edge[id.value]);
        std::vector<const Value*> args;
        for (NodeId s : e.sources) {
          auto it = live.find(s);
          if (it == live.end()) {
            throw Error(ErrorCode::StalledGraph, "'" + node.name + "' needs '" + phg_.node(s).name +
                                                     "', which carries no value");
          }
          args.push_back(&it->second);
        }
        v = apply(e, node, args);
        ++stats_.evaluated;
        std::vector<NodeId> seen;
        for (NodeId s : e.sources) {
          if (std::find(seen.begin(), seen.end(), s) != seen.end()) continue;
          seen.push_back(s);
          if (--readers[s.value] == 0) release(s, live, kept);
        }
      }
      if (!v) continue;
      live.emplace(id, std::move(*v));
      stats_.peak_live = std::max(stats_.peak_live, live.size());
      if (readers[id.value] == 0) release(id, live, kept);
    }
    return kept;
  }

  const EvalStats& stats() const { return stats_; }
  std::vector<std::string>& warnings() { return warnings_; }

 private:
  // Sinks are kept; everything else is dropped unless retain_all.
  void release(NodeId id, std::map<NodeId, Value>& live, std::map<NodeId, Value>& kept) {
    auto it = live.find(id);
    if (it == live.end()) return;
    bool sink = true;
    for (EdgeId e : phg_.outgoing(id)) {
      const EdgeKind k = phg_.edge(e).kind;
      sink &= !(is_inference_kind(k) || k == EdgeKind::Transfer);
    }
    if (sink || options_.retain_all) kept.emplace(id, it->second);
    live.erase(it);
  }

  void check_input(const PhgNode& node, const Multivector& x) const {
    if (x.algebra().signature() != phg_.algebra()->signature()) {
      throw Error(ErrorCode::AlgebraMismatch, "input '" + node.name + "' uses " + x.algebra().signature().to_string());
    }
    GradeSet declared = node.declaration();
    if (declared.is_known() && !x.is_zero() && !x.grade_set().is_subset_of(declared)) {
      throw Error(ErrorCode::GradeMismatch, "input '" + node.name + "' has grades " + x.grade_set().to_string() +
                                                " outside declared " + declared.to_string());
    }
  }

  Multivector prod(ProductKind kind, const Multivector& x, const Multivector& y) {
    if (options_.backend == EvalBackend::Dense) return product(kind, x, y);
    require_compatible(x, y);
    if (x.is_zero() || y.is_zero()) return Multivector::zero(x.algebra_ptr(), x.mode());
    auto key = std::make_tuple(static_cast<int>(kind), x.grade_set().bits(), y.grade_set().bits());
    auto it = kernels_.find(key);
    if (it == kernels_.end()) {
      std::shared_ptr<const KernelIR> k;
      try {
        k = std::make_shared<const KernelIR>(emit_kernel(x.algebra(), kind, x.grade_set(), y.grade_set()));
      } catch (const Error& err) {
        if (err.code() != ErrorCode::StructuralZeroKernel) throw;
      }
      it = kernels_.emplace(key, k).first;
    }
    if (!it->second) return Multivector::zero(x.algebra_ptr(), x.mode());
    const Multivector ops[] = {x, y};
    return run_kernel(*it->second, ops);
  }

  Multivector join(std::span<const Multivector> xs) {
    const int k = static_cast<int>(xs.size()) - 1;
    const bool points = std::all_of(xs.begin(), xs.end(), [](const Multivector& x) {
      return x.is_zero() || x.grade_set() == GradeSet::singleton(1);
    });
    if (options_.backend == EvalBackend::Kernel && points && k + 1 <= xs[0].algebra().dim()) {
      for (std::size_t i = 1; i < xs.size(); ++i) require_compatible(xs[0], xs[i]);
      auto it = join_kernels_.find(k);
      if (it == join_kernels_.end()) {
        it = join_kernels_.emplace(k, std::make_shared<const KernelIR>(emit_join_kernel(xs[0].algebra(), k))).first;
      }
      return run_kernel(*it->second, xs);
    }
    if (options_.backend == EvalBackend::Dense) return outer_join(xs);
    Multivector acc = xs[0];
    for (std::size_t i = 1; i < xs.size(); ++i) acc = prod(ProductKind::Outer, acc, xs[i]);
    return acc;
  }

  Value apply(const Hyperedge& e, const PhgNode& target, const std::vector<const Value*>& a) {
    const Multivector& x0 = a[0]->primal;
    const auto alg = x0.algebra_ptr();
    const NumericMode mode = x0.mode();
    auto zero = [&] { return Multivector::zero(alg, mode); };

    if (auto pk = product_kind_of(e.kind)) {
      const Multivector& x = a[0]->primal;
      const Multivector& y = a[1]->primal;
      Value v{prod(*pk, x, y), std::nullopt};
      if (dual_) v.tangent = prod(*pk, *a[0]->tangent, y) + prod(*pk, x, *a[1]->tangent);
      return v;
    }
    switch (e.kind) {
      case EdgeKind::Transfer:
        return *a[0];
      case EdgeKind::GradeSelect: {
        Value v{grade_project(x0, e.payload.grade), std::nullopt};
        if (dual_) v.tangent = grade_project(*a[0]->tangent, e.payload.grade);
        return v;
      }
      case EdgeKind::Sandwich: {
        const Multivector& r = a[0]->primal;
        const Multivector& x = a[1]->primal;
        SandwichResult s = sandwich(r, x);
        for (std::string& w : s.warnings) warnings_.push_back("'" + target.name + "': " + w);
        Value v{std::move(s.value), std::nullopt};
        if (dual_) {
          const Multivector& dr = *a[0]->tangent;
          const Multivector& dx = *a[1]->tangent;
          const Multivector rr = reverse(r);
          v.tangent = prod(ProductKind::GP, prod(ProductKind::GP, dr, x), rr) +
                      prod(ProductKind::GP, prod(ProductKind::GP, r, dx), rr) +
                      prod(ProductKind::GP, prod(ProductKind::GP, r, x), reverse(dr));
        }
        return v;
      }
      case EdgeKind::Join: {
        std::vector<Multivector> xs;
        for (const Value* v : a) xs.push_back(v->primal);
        Value v{join(xs), std::nullopt};
        if (dual_) {
          Multivector t = zero();
          for (std::size_t i = 0; i < xs.size(); ++i) {
            std::vector<Multivector> ys = xs;
            ys[i] = *a[i]->tangent;
            t += join(ys);
          }
          v.tangent = t;
        }
        return v;
      }
      case EdgeKind::Norm:
        return e.payload.norm == NormMode::Measure ? measure(e, target, *a[0]) : metric_norm(target, *a[0]);
      default:
        throw Error(ErrorCode::InvalidArgument, "edge kind '" + std::string(to_string(e.kind)) + "' carries no value");
    }
  }

  Scalar root_of(const NormValue& n, const PhgNode& target) const {
    if (!n.exact) {
      throw Error(ErrorCode::NonRationalResult, "'" + target.name + "': sqrt(" + n.squared.to_string() +
                                                    ") is irrational; evaluate in float mode");
    }
    return *n.exact;
  }

  Value metric_norm(const PhgNode& target, const Value& in) {
    const Multivector& x = in.primal;
    const auto alg = x.algebra_ptr();
    NormValue n = norm(x);
    Scalar value = root_of(n, target);
    Value v{Multivector::scalar(alg, value), std::nullopt};
    if (!dual_) return v;
    // d sqrt|s| = sign(s) * Σ m_b x_b dx_b / sqrt|s|, with s = Σ m_b x_b².
    ExactAccumulator s(x.mode()), ds(x.mode());
    for (auto& [mask, c] : x.terms()) {
      const int m = alg->cayley(Blade{mask}, Blade{mask}).sign * reverse_sign(Blade{mask}.grade());
      if (m == 0) continue;
      const Scalar mc = m > 0 ? c : -c;
      s.add_product(mc, c);
      ds.add_product(mc, in.tangent->get(Blade{mask}));
    }
    if (value.is_zero()) throw Error(ErrorCode::NormAtZero, "'" + target.name + "': norm derivative at zero");
    Scalar t = ds.value() / value;
    if (s.value().sign() < 0) t = -t;
    v.tangent = Multivector::scalar(alg, t);
    return v;
  }

  Value measure(const Hyperedge& e, const PhgNode& target, const Value& in) {
    const Multivector& x = in.primal;
    const auto alg = x.algebra_ptr();
    if (x.is_zero()) {
      if (dual_) throw Error(ErrorCode::NormAtZero, "'" + target.name + "': measure derivative of a degenerate simplex");
      return Value{Multivector::zero(alg, x.mode()), std::nullopt};
    }
    GradeSet g = x.grade_set();
    if (!g.is_singleton() || g.single() < 2) {
      throw Error(ErrorCode::GradeMismatch, "edge '" + e.label + "': measure needs a join of at least two points, got grades " +
                                                g.to_string());
    }
    const int k = g.single() - 1;
    NormValue m = simplex_measure(x, k);
    Scalar value = root_of(m, target);
    Value v{Multivector::scalar(alg, value), std::nullopt};
    if (!dual_) return v;
    std::uint32_t degenerate = 0;
    for (int i = 0; i < alg->dim(); ++i) {
      if (alg->generator_square(i) == 0) degenerate |= 1u << i;
    }
    ExactAccumulator ds(x.mode());
    for (auto& [mask, c] : x.terms()) {
      if (mask & degenerate) ds.add_product(c, in.tangent->get(Blade{mask}));
    }
    if (value.is_zero()) throw Error(ErrorCode::NormAtZero, "'" + target.name + "': measure derivative at zero");
    // m = sqrt(W)/k!  ⇒  dm = Σ x_b dx_b / (sqrt(W) k!) = Σ x_b dx_b / (m (k!)²)
    long f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    const Scalar ff = Scalar::from_int(f * f, x.mode());
    v.tangent = Multivector::scalar(alg, ds.value() / (value * ff));
    return v;
  }

  const Phg& phg_;
  EvalOptions options_;
  bool dual_;
  EvalStats stats_;
  std::vector<std::string> warnings_;
  std::map<std::tuple<int, std::uint32_t, std::uint32_t>, std::shared_ptr<const KernelIR>> kernels_;
  std::map<int, std::shared_ptr<const KernelIR>> join_kernels_;
};

}  // namespace

EvalResult eval(const Phg& phg, const ValueMap& inputs, const EvalOptions& options) {
  Evaluator ev(phg, options, false);
  EvalResult out;
  for (auto& [id, v] : ev.run(inputs, nullptr)) out.values.emplace(id, std::move(v.primal));
  out.stats = ev.stats();
  out.warnings = std::move(ev.warnings());
  return out;
}

DualResult directional_derivative(const Phg& phg, const ValueMap& inputs, const ValueMap& direction,
                                  const EvalOptions& options) {
  for (auto& [id, d] : direction) {
    if (!inputs.contains(id)) {
      throw Error(ErrorCode::InvalidArgument, "direction given for '" + phg.node(id).name + "', which is not a bound input");
    }
  }
  Evaluator ev(phg, options, true);
  DualResult out;
  for (auto& [id, v] : ev.run(inputs, &direction)) {
    out.values.emplace(id, DualMultivector{std::move(v.primal), std::move(*v.tangent)});
  }
  out.stats = ev.stats();
  out.warnings = std::move(ev.warnings());
  return out;
}

}  // namespace phg
