#pragma once

#include <optional>
#include <span>
#include <string>

#include "phg/algebra.hpp"
#include "phg/grade_set.hpp"
#include "phg/ids.hpp"

namespace phg {

/// Output grades of a pure grade-p by grade-q product from grade arithmetic
/// alone (no metric). Throws GradeOutOfRange unless 0 <= p, q <= d.
///   GP          {|p-q|, |p-q|+2, ..., p+q} ∩ [0, d]
///   Outer       {p+q}, or structural zero when p+q > d
///   Inner       {|p-q|}
///   Regressive  {p+q-d}, or structural zero when p+q < d
GradeSet signature_grades(ProductKind kind, int p, int q, int d);

/// Exact output grades obtained by scanning the algebra's Cayley entries over
/// operand grades P × Q. Structural-zero operands yield structural zero.
GradeSet table_grades(const Algebra& alg, ProductKind kind, const GradeSet& P, const GradeSet& Q);

/// {Σ grades}, or structural zero when the sum exceeds d.
GradeSet join_grades(std::span<const int> grades, int d);
/// Set-valued generalization: every attainable sum not exceeding d.
GradeSet join_grade_sets(std::span<const GradeSet> grades, int d);

/// Grades of r x reverse(r). Pure-parity versors preserve the grades of x;
/// otherwise the table-derived superset is returned and `preserves` is false.
struct SandwichGrades {
  GradeSet grades;
  bool preserves = true;
};
SandwichGrades sandwich_grades(const Algebra& alg, const GradeSet& R, const GradeSet& X);

struct GradeDiagnostic {
  NodeId node;
  GradeSet declared;
  GradeSet inferred;
  Severity severity = Severity::Warning;
  std::string message;
};

/// O(1) comparison of a declaration against an inference:
/// Error when disjoint, Warning when the declaration is wider than the
/// inference (or only partially overlaps it), nothing when declared ⊆ inferred.
std::optional<GradeDiagnostic> check_grades(const GradeSet& declared, const GradeSet& inferred, NodeId node);

}  // namespace phg
