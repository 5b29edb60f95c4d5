#include "phg/kernel.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "phg/error.hpp"

namespace phg {

namespace {

std::size_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
  return r;
}

std::size_t factorial(int n) {
  std::size_t r = 1;
  for (int i = 2; i <= n; ++i) r *= static_cast<std::size_t>(i);
  return r;
}

void require_grades(const Algebra& alg, const GradeSet& g) {
  if (g.is_unknown()) throw Error(ErrorCode::InvalidArgument, "kernel operand grade set is unknown");
  if (g.max_grade() > alg.dim()) {
    throw Error(ErrorCode::GradeOutOfRange,
                "grade set " + g.to_string() + " exceeds d=" + std::to_string(alg.dim()));
  }
}

std::vector<Blade> blades_of(const Algebra& alg, const GradeSet& g) {
  std::vector<Blade> out;
  for (Blade b : alg.blades()) {
    if (g.contains(b.grade())) out.push_back(b);
  }
  return out;
}

struct Term {
  int sign = 1;
  std::vector<std::string> factors;
};

class Emitter {
 public:
  explicit Emitter(std::vector<Instruction>& code, bool fused) : code_(code), fused_(fused) {}

  std::string temp() { return "t" + std::to_string(next_++); }

  void emit(std::string dst, OpCode op, std::vector<std::string> args) {
    code_.push_back(Instruction{std::move(dst), op, std::move(args)});
  }

  // Product of a term's factors, written to dst.
  void product(const Term& t, const std::string& dst) {
    std::string acc = t.factors[0];
    for (std::size_t i = 1; i < t.factors.size(); ++i) {
      std::string out = i + 1 == t.factors.size() ? dst : temp();
      emit(out, OpCode::Mul, {acc, t.factors[i]});
      acc = out;
    }
  }

  // Signed sum of terms into dst; the first positive term leads so that
  // signs fold into SUB, and an all-negative sum costs a single NEG.
  void sum(const std::string& dst, std::vector<Term> terms) {
    auto pos = std::find_if(terms.begin(), terms.end(), [](const Term& t) { return t.sign > 0; });
    if (pos != terms.end()) std::rotate(terms.begin(), pos, pos + 1);
    const bool negate = terms[0].sign < 0;

    if (terms.size() == 1) {
      if (!negate) {
        product(terms[0], dst);
      } else {
        std::string t = temp();
        product(terms[0], t);
        emit(dst, OpCode::Neg, {t});
      }
      return;
    }

    std::string acc = temp();
    product(terms[0], acc);
    for (std::size_t i = 1; i < terms.size(); ++i) {
      const Term& term = terms[i];
      const bool last = i + 1 == terms.size() && !negate;
      std::string out = last ? dst : temp();
      if (fused_ && !negate && term.sign > 0 && term.factors.size() == 2) {
        emit(out, OpCode::MulAdd, {term.factors[0], term.factors[1], acc});
      } else {
        std::string t = temp();
        product(term, t);
        OpCode op = negate || term.sign > 0 ? OpCode::Add : OpCode::Sub;
        emit(out, op, {acc, t});
      }
      acc = out;
    }
    if (negate) emit(dst, OpCode::Neg, {acc});
  }

 private:
  std::vector<Instruction>& code_;
  bool fused_;
  int next_ = 0;
};

std::string slot(const Algebra& alg, const std::string& operand, Blade b) {
  return operand + "." + alg.blade_name(b);
}

}  // namespace

SparsityProfile sparsity_profile(const Algebra& alg, ProductKind kind, const GradeSet& P, const GradeSet& Q) {
  require_grades(alg, P);
  require_grades(alg, Q);
  SparsityProfile prof;
  prof.signature = alg.signature();
  prof.kind = std::string(to_string(kind));
  prof.grades = {P, Q};
  std::vector<Blade> as = blades_of(alg, P), bs = blades_of(alg, Q);
  prof.restricted_dense = as.size() * bs.size();
  std::map<std::uint32_t, std::size_t> per_output;
  for (Blade a : as) {
    for (Blade b : bs) {
      const CayleyEntry& e = alg.contribution(kind, a, b);
      if (e.sign == 0) continue;
      ++prof.nonzero;
      ++per_output[e.result.mask];
    }
  }
  prof.multiplies = prof.nonzero;
  for (auto& [mask, n] : per_output) prof.adds += n - 1;
  const std::size_t n = alg.size();
  prof.dense_multiplies = n * n;
  prof.dense_adds = n * (n - 1);
  prof.reduction = 1.0 - static_cast<double>(prof.multiplies) / static_cast<double>(prof.dense_multiplies);
  return prof;
}

SparsityProfile sparsity_profile(const Algebra& alg, ProductKind kind, int p, int q) {
  const int d = alg.dim();
  if (p < 0 || q < 0 || p > d || q > d) {
    throw Error(ErrorCode::GradeOutOfRange, "grades (" + std::to_string(p) + "," + std::to_string(q) +
                                                ") outside [0," + std::to_string(d) + "]");
  }
  return sparsity_profile(alg, kind, GradeSet::singleton(p), GradeSet::singleton(q));
}

SparsityProfile join_sparsity_profile(const Algebra& alg, int k) {
  const int d = alg.dim();
  if (k < 1) throw Error(ErrorCode::ArityMismatch, "a join needs at least two points");
  SparsityProfile prof;
  prof.signature = alg.signature();
  prof.kind = "join";
  prof.grades.assign(static_cast<std::size_t>(k + 1), GradeSet::singleton(1));
  const std::size_t slots = binomial(d, k + 1);
  const std::size_t terms = factorial(k + 1);
  prof.nonzero = slots * terms;
  prof.restricted_dense = 1;
  for (int i = 0; i <= k; ++i) prof.restricted_dense *= static_cast<std::size_t>(d);
  prof.multiplies = slots * terms * static_cast<std::size_t>(k);
  prof.adds = slots * (terms - 1);
  const std::size_t n = alg.size();
  prof.dense_multiplies = static_cast<std::size_t>(k) * n * n;
  prof.dense_adds = static_cast<std::size_t>(k) * n * (n - 1);
  prof.reduction = 1.0 - static_cast<double>(prof.multiplies) / static_cast<double>(prof.dense_multiplies);
  return prof;
}

double tensor_sparsity(const Algebra& alg, ProductKind kind) {
  std::size_t nonzero = 0;
  for (Blade a : alg.blades()) {
    for (Blade b : alg.blades()) nonzero += alg.contribution(kind, a, b).sign != 0;
  }
  const double n = static_cast<double>(alg.size());
  return 1.0 - static_cast<double>(nonzero) / (n * n * n);
}

std::string_view to_string(OpCode op) {
  switch (op) {
    case OpCode::Mul: return "mul";
    case OpCode::Add: return "add";
    case OpCode::Sub: return "sub";
    case OpCode::Neg: return "neg";
    case OpCode::MulAdd: return "muladd";
  }
  return "?";
}

std::size_t KernelIR::count(OpCode op) const {
  return static_cast<std::size_t>(
      std::count_if(code.begin(), code.end(), [op](const Instruction& i) { return i.op == op; }));
}

std::string KernelIR::to_text() const {
  std::string s = "# kernel " + kind + " " + signature.to_string();
  for (const GradeSet& g : grades) s += " " + g.to_string();
  s += "\n# inputs";
  for (const std::string& in : inputs) s += " " + in;
  s += "\n# outputs";
  for (const std::string& out : outputs) s += " " + out;
  s += "\n# mul " + std::to_string(multiplies()) + " add " + std::to_string(adds()) + "\n";
  for (const Instruction& i : code) {
    s += i.dst + " = " + std::string(to_string(i.op));
    for (const std::string& a : i.args) s += " " + a;
    s += "\n";
  }
  return s;
}

KernelIR emit_kernel(const Algebra& alg, ProductKind kind, const GradeSet& P, const GradeSet& Q,
                     const KernelOptions& options) {
  if (P.is_structural_zero() || Q.is_structural_zero()) {
    throw Error(ErrorCode::StructuralZeroKernel, "operand is provably zero; no kernel to emit");
  }
  require_grades(alg, P);
  require_grades(alg, Q);

  KernelIR kir;
  kir.signature = alg.signature();
  kir.kind = std::string(to_string(kind));
  kir.grades = {P, Q};
  kir.operands = {"a", "b"};
  kir.operand_blades = {blades_of(alg, P), blades_of(alg, Q)};
  for (std::size_t i = 0; i < 2; ++i) {
    for (Blade b : kir.operand_blades[i]) kir.inputs.push_back(slot(alg, kir.operands[i], b));
  }

  std::map<std::uint32_t, std::vector<Term>> per_output;
  for (Blade a : kir.operand_blades[0]) {
    for (Blade b : kir.operand_blades[1]) {
      const CayleyEntry& e = alg.contribution(kind, a, b);
      if (e.sign == 0) continue;
      per_output[e.result.mask].push_back(Term{e.sign, {slot(alg, "a", a), slot(alg, "b", b)}});
    }
  }
  if (per_output.empty()) {
    throw Error(ErrorCode::StructuralZeroKernel, std::string(to_string(kind)) + " of " + P.to_string() + " x " +
                                                     Q.to_string() + " in " + alg.signature().to_string() +
                                                     " is identically zero");
  }

  Emitter em(kir.code, options.fused_multiply_add);
  for (auto& [mask, terms] : per_output) {
    Blade out{mask};
    kir.output_blades.push_back(out);
    kir.outputs.push_back(slot(alg, "out", out));
    em.sum(kir.outputs.back(), std::move(terms));
  }
  return kir;
}

KernelIR emit_join_kernel(const Algebra& alg, int k) {
  const int d = alg.dim();
  if (k < 1) throw Error(ErrorCode::ArityMismatch, "a join needs at least two points");
  if (k + 1 > d) {
    throw Error(ErrorCode::StructuralZeroKernel, "join of " + std::to_string(k + 1) + " points is zero in d=" +
                                                     std::to_string(d));
  }
  KernelIR kir;
  kir.signature = alg.signature();
  kir.kind = "join";
  kir.grades.assign(static_cast<std::size_t>(k + 1), GradeSet::singleton(1));
  const std::vector<Blade> vectors = alg.blades_of_grade(1);
  for (int i = 0; i <= k; ++i) {
    kir.operands.push_back("x" + std::to_string(i));
    kir.operand_blades.push_back(vectors);
    for (Blade b : vectors) kir.inputs.push_back(slot(alg, kir.operands.back(), b));
  }

  Emitter em(kir.code, false);
  for (Blade out : alg.blades_of_grade(k + 1)) {
    std::vector<int> gens;
    for (int g = 0; g < d; ++g) {
      if (out.mask >> g & 1u) gens.push_back(g);
    }
    std::vector<int> perm(gens.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<Term> terms;
    do {
      int inversions = 0;
      for (std::size_t i = 0; i < perm.size(); ++i) {
        for (std::size_t j = i + 1; j < perm.size(); ++j) inversions += perm[i] > perm[j];
      }
      Term t{inversions % 2 ? -1 : 1, {}};
      for (std::size_t i = 0; i < perm.size(); ++i) {
        t.factors.push_back(slot(alg, kir.operands[i], Blade{1u << gens[static_cast<std::size_t>(perm[i])]}));
      }
      terms.push_back(std::move(t));
    } while (std::next_permutation(perm.begin(), perm.end()));
    kir.output_blades.push_back(out);
    kir.outputs.push_back(slot(alg, "out", out));
    em.sum(kir.outputs.back(), std::move(terms));
  }
  return kir;
}

SlotValues run_kernel(const KernelIR& kir, const SlotValues& inputs) {
  std::unordered_map<std::string, Scalar> env;
  for (const std::string& in : kir.inputs) {
    auto it = inputs.find(in);
    if (it == inputs.end()) throw Error(ErrorCode::MissingSlot, "missing input slot '" + in + "'");
    env.emplace(in, it->second);
  }
  auto get = [&](const std::string& name) -> const Scalar& {
    auto it = env.find(name);
    if (it == env.end()) throw Error(ErrorCode::MissingSlot, "slot '" + name + "' read before it is written");
    return it->second;
  };
  for (const Instruction& i : kir.code) {
    Scalar v;
    switch (i.op) {
      case OpCode::Mul: v = get(i.args[0]) * get(i.args[1]); break;
      case OpCode::Add: v = get(i.args[0]) + get(i.args[1]); break;
      case OpCode::Sub: v = get(i.args[0]) - get(i.args[1]); break;
      case OpCode::Neg: v = -get(i.args[0]); break;
      case OpCode::MulAdd: v = get(i.args[0]) * get(i.args[1]) + get(i.args[2]); break;
    }
    env.insert_or_assign(i.dst, std::move(v));
  }
  SlotValues out;
  for (const std::string& o : kir.outputs) out.emplace(o, get(o));
  return out;
}

SlotValues bind_operands(const KernelIR& kir, std::span<const Multivector> operands) {
  if (operands.size() != kir.operands.size()) {
    throw Error(ErrorCode::ArityMismatch, "kernel expects " + std::to_string(kir.operands.size()) + " operands, got " +
                                              std::to_string(operands.size()));
  }
  SlotValues in;
  for (std::size_t i = 0; i < operands.size(); ++i) {
    const Multivector& x = operands[i];
    if (x.algebra().signature() != kir.signature) {
      throw Error(ErrorCode::AlgebraMismatch, "operand algebra " + x.algebra().signature().to_string() +
                                                  " differs from kernel " + kir.signature.to_string());
    }
    const auto& blades = kir.operand_blades[i];
    for (auto& [mask, c] : x.terms()) {
      if (!std::binary_search(blades.begin(), blades.end(), Blade{mask})) {
        throw Error(ErrorCode::GradeMismatch, "operand " + kir.operands[i] + " has a " +
                                                  x.algebra().blade_name(Blade{mask}) +
                                                  " component outside the kernel's grades");
      }
    }
    for (Blade b : blades) in.emplace(slot(x.algebra(), kir.operands[i], b), x.get(b));
  }
  return in;
}

Multivector run_kernel(const KernelIR& kir, std::span<const Multivector> operands) {
  SlotValues out = run_kernel(kir, bind_operands(kir, operands));
  Multivector result(operands[0].algebra_ptr(), operands[0].mode());
  for (std::size_t i = 0; i < kir.outputs.size(); ++i) result.set(kir.output_blades[i], out.at(kir.outputs[i]));
  result.canonicalize();
  return result;
}

CompiledKernel::CompiledKernel(const KernelIR& kir) {
  std::unordered_map<std::string, std::uint32_t> index;
  auto id = [&](const std::string& name) {
    auto [it, inserted] = index.emplace(name, static_cast<std::uint32_t>(index.size()));
    return it->second;
  };
  for (const std::string& in : kir.inputs) id(in);
  n_inputs_ = kir.inputs.size();
  for (const Instruction& i : kir.code) {
    Op op{i.op, 0, 0, 0, 0};
    op.a = index.at(i.args[0]);
    if (i.args.size() > 1) op.b = index.at(i.args[1]);
    if (i.args.size() > 2) op.c = index.at(i.args[2]);
    op.dst = id(i.dst);
    ops_.push_back(op);
  }
  for (const std::string& o : kir.outputs) outputs_.push_back(index.at(o));
  n_slots_ = index.size();
}

void CompiledKernel::run(const double* in, double* out, double* s) const {
  std::copy(in, in + n_inputs_, s);
  for (const Op& o : ops_) {
    switch (o.op) {
      case OpCode::Mul: s[o.dst] = s[o.a] * s[o.b]; break;
      case OpCode::Add: s[o.dst] = s[o.a] + s[o.b]; break;
      case OpCode::Sub: s[o.dst] = s[o.a] - s[o.b]; break;
      case OpCode::Neg: s[o.dst] = -s[o.a]; break;
      case OpCode::MulAdd: s[o.dst] = s[o.a] * s[o.b] + s[o.c]; break;
    }
  }
  for (std::size_t i = 0; i < outputs_.size(); ++i) out[i] = s[outputs_[i]];
}

}  // namespace phg
