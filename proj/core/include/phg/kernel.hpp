#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "phg/algebra.hpp"
#include "phg/grade_set.hpp"
#include "phg/multivector.hpp"
#include "phg/scalar.hpp"

namespace phg {

struct SparsityProfile {
  Signature signature;
  std::string kind;              // "gp", "outer", "inner", "regressive", "join"
  std::vector<GradeSet> grades;  // one per operand
  std::size_t nonzero = 0;
  std::size_t restricted_dense = 0;
  std::size_t multiplies = 0;
  std::size_t adds = 0;
  std::size_t dense_multiplies = 0;
  std::size_t dense_adds = 0;
  double reduction = 0.0;        // 1 - multiplies / dense_multiplies
};

/// Counts over the Cayley entries of grade-P × grade-Q blade pairs, kept
/// only where the kind contributes. Throws GradeOutOfRange.
SparsityProfile sparsity_profile(const Algebra& alg, ProductKind kind, int p, int q);
SparsityProfile sparsity_profile(const Algebra& alg, ProductKind kind, const GradeSet& P, const GradeSet& Q);
/// Counts of the fused join kernel over k+1 grade-1 operands.
SparsityProfile join_sparsity_profile(const Algebra& alg, int k);

/// Fraction of zero entries in the full pair × output-blade product tensor.
double tensor_sparsity(const Algebra& alg, ProductKind kind);

enum class OpCode { Mul, Add, Sub, Neg, MulAdd };
std::string_view to_string(OpCode op);

/// dst = op args...   (MulAdd: args[0]*args[1] + args[2])
struct Instruction {
  std::string dst;
  OpCode op = OpCode::Mul;
  std::vector<std::string> args;
};

/// Straight-line kernel over named scalar slots. Input slots are
/// "<operand>.<blade>"; outputs "out.<blade>"; temporaries "tN".
struct KernelIR {
  Signature signature;
  std::string kind;
  std::vector<GradeSet> grades;
  std::vector<std::string> operands;             // "a", "b" or "x0".."xk"
  std::vector<std::vector<Blade>> operand_blades;
  std::vector<Blade> output_blades;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::vector<Instruction> code;

  std::size_t count(OpCode op) const;
  std::size_t multiplies() const { return count(OpCode::Mul) + count(OpCode::MulAdd); }
  std::size_t adds() const { return count(OpCode::Add) + count(OpCode::Sub) + count(OpCode::MulAdd); }
  std::string to_text() const;
};

struct KernelOptions {
  bool fused_multiply_add = false;
};

/// Throws StructuralZeroKernel when no Cayley entry contributes, or when an
/// operand grade set is structural zero; InvalidArgument when unknown.
KernelIR emit_kernel(const Algebra& alg, ProductKind kind, const GradeSet& P, const GradeSet& Q,
                     const KernelOptions& options = {});

/// Fused join of k+1 grade-1 operands, expanded per output blade.
/// Throws StructuralZeroKernel when k+1 > d.
KernelIR emit_join_kernel(const Algebra& alg, int k);

using SlotValues = std::map<std::string, Scalar>;

/// Throws MissingSlot when an input slot is absent.
SlotValues run_kernel(const KernelIR& kir, const SlotValues& inputs);

/// Binds operand multivectors to input slots (coefficients outside the
/// operand's blades must be zero; throws GradeMismatch otherwise).
SlotValues bind_operands(const KernelIR& kir, std::span<const Multivector> operands);
/// Runs the kernel and gathers the output slots into a multivector.
Multivector run_kernel(const KernelIR& kir, std::span<const Multivector> operands);

/// Index-resolved form for repeated float evaluation.
class CompiledKernel {
 public:
  explicit CompiledKernel(const KernelIR& kir);
  std::size_t input_count() const { return n_inputs_; }
  std::size_t output_count() const { return outputs_.size(); }
  std::size_t slot_count() const { return n_slots_; }
  /// in: values in KernelIR::inputs order; out: KernelIR::outputs order;
  /// scratch: slot_count() doubles owned by the caller.
  void run(const double* in, double* out, double* scratch) const;

 private:
  struct Op {
    OpCode op;
    std::uint32_t dst, a, b, c;
  };
  std::size_t n_inputs_ = 0;
  std::size_t n_slots_ = 0;
  std::vector<Op> ops_;
  std::vector<std::uint32_t> outputs_;
};

}  // namespace phg
