#include "phg/grade.hpp"

#include <cstdlib>

#include "phg/error.hpp"

namespace phg {

namespace {

std::uint32_t range_bits(int d) { return (1u << (d + 1)) - 1; }

}  // namespace

GradeSet signature_grades(ProductKind kind, int p, int q, int d) {
  if (d < 0 || p < 0 || q < 0 || p > d || q > d) {
    throw Error(ErrorCode::GradeOutOfRange, "grades (" + std::to_string(p) + "," + std::to_string(q) +
                                                ") outside [0," + std::to_string(d) + "]");
  }
  switch (kind) {
    case ProductKind::GP: {
      std::uint32_t bits = 0;
      for (int g = std::abs(p - q); g <= p + q; g += 2) {
        if (g <= d) bits |= 1u << g;
      }
      return GradeSet::from_bits(bits);
    }
    case ProductKind::Outer:
      return p + q > d ? GradeSet::structural_zero() : GradeSet::singleton(p + q);
    case ProductKind::Inner:
      return GradeSet::singleton(std::abs(p - q));
    case ProductKind::Regressive:
      return p + q < d ? GradeSet::structural_zero() : GradeSet::singleton(p + q - d);
  }
  return GradeSet::unknown();
}

GradeSet table_grades(const Algebra& alg, ProductKind kind, const GradeSet& P, const GradeSet& Q) {
  if (P.is_unknown() || Q.is_unknown()) return GradeSet::unknown();
  if (P.is_structural_zero() || Q.is_structural_zero()) return GradeSet::structural_zero();
  std::uint32_t bits = 0;
  for (Blade a : alg.blades()) {
    if (!P.contains(a.grade())) continue;
    for (Blade b : alg.blades()) {
      if (!Q.contains(b.grade())) continue;
      const CayleyEntry& e = alg.contribution(kind, a, b);
      if (e.sign != 0) bits |= 1u << e.result.grade();
    }
  }
  return GradeSet::from_bits(bits);
}

GradeSet join_grades(std::span<const int> grades, int d) {
  int sum = 0;
  for (int g : grades) {
    if (g < 0 || g > d) throw Error(ErrorCode::GradeOutOfRange, "join factor grade " + std::to_string(g) + " outside [0," + std::to_string(d) + "]");
    sum += g;
  }
  return sum > d ? GradeSet::structural_zero() : GradeSet::singleton(sum);
}

GradeSet join_grade_sets(std::span<const GradeSet> grades, int d) {
  std::uint32_t acc = 1u;  // {0}
  for (const GradeSet& g : grades) {
    if (g.is_unknown()) return GradeSet::unknown();
    if (g.is_structural_zero()) return GradeSet::structural_zero();
    std::uint32_t next = 0;
    for (int k : g.grades()) next |= acc << k;
    acc = next & range_bits(d);
    if (acc == 0) return GradeSet::structural_zero();
  }
  return GradeSet::from_bits(acc);
}

SandwichGrades sandwich_grades(const Algebra& alg, const GradeSet& R, const GradeSet& X) {
  if (R.is_unknown() || X.is_unknown()) return {GradeSet::unknown(), true};
  if (R.is_structural_zero() || X.is_structural_zero()) return {GradeSet::structural_zero(), true};
  constexpr std::uint32_t kEven = 0x55555555u;
  const bool pure_parity = (R.bits() & kEven) == 0 || (R.bits() & ~kEven) == 0;
  if (pure_parity) return {X, true};
  GradeSet wide = table_grades(alg, ProductKind::GP, table_grades(alg, ProductKind::GP, R, X), R);
  return {wide, false};
}

std::optional<GradeDiagnostic> check_grades(const GradeSet& declared, const GradeSet& inferred, NodeId node) {
  if (declared.is_unknown() || inferred.is_unknown()) return std::nullopt;
  if (inferred.is_structural_zero()) {
    return GradeDiagnostic{node, declared, inferred, Severity::Warning,
                           "provably zero computation: declared " + declared.to_string() +
                               " but grade arithmetic forces zero"};
  }
  if (!declared.intersects(inferred)) {
    return GradeDiagnostic{node, declared, inferred, Severity::Error,
                           "declared grades " + declared.to_string() + " are disjoint from inferred " +
                               inferred.to_string()};
  }
  if (declared.is_subset_of(inferred)) return std::nullopt;
  if (inferred.is_subset_of(declared)) {
    return GradeDiagnostic{node, declared, inferred, Severity::Warning,
                           "declaration " + declared.to_string() + " is wider than inferred " + inferred.to_string() +
                               "; narrowing would let kernels skip " +
                               std::to_string(declared.size() - inferred.size()) + " grade(s)"};
  }
  return GradeDiagnostic{node, declared, inferred, Severity::Warning,
                         "declaration " + declared.to_string() + " only partially overlaps inferred " +
                             inferred.to_string()};
}

}  // namespace phg
