#pragma once

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "phg/algebra.hpp"
#include "phg/grade_set.hpp"
#include "phg/scalar.hpp"

namespace phg {

/// Relative cutoff applied when canonicalizing float coefficients.
inline constexpr double kFloatZeroThreshold = 1e-14;

/// Blade→coefficient map in canonical form: no stored zeros, every blade
/// valid for the algebra, every coefficient in the multivector's mode.
class Multivector {
 public:
  using AlgebraPtr = std::shared_ptr<const Algebra>;

  Multivector(AlgebraPtr alg, NumericMode mode);

  static Multivector zero(AlgebraPtr alg, NumericMode mode) { return Multivector(std::move(alg), mode); }
  static Multivector scalar(AlgebraPtr alg, const Scalar& value);
  static Multivector blade(AlgebraPtr alg, Blade b, const Scalar& value);
  /// Coefficients listed for every blade in ascending mask order.
  static Multivector from_dense(AlgebraPtr alg, NumericMode mode, std::span<const Scalar> coefficients);

  const Algebra& algebra() const { return *alg_; }
  const AlgebraPtr& algebra_ptr() const { return alg_; }
  NumericMode mode() const { return mode_; }

  const std::map<std::uint32_t, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Scalar get(Blade b) const;
  /// Sets (or erases, when zero) the coefficient of b.
  void set(Blade b, const Scalar& value);
  /// Adds value to the coefficient of b without canonicalizing floats.
  void accumulate(Blade b, const Scalar& value);
  /// Drops exact zeros, and float coefficients below the relative threshold.
  void canonicalize();

  GradeSet grade_set() const;
  std::vector<Scalar> dense() const;

  Multivector& operator+=(const Multivector& o);
  Multivector& operator-=(const Multivector& o);
  Multivector& operator*=(const Scalar& s);
  Multivector operator-() const;
  friend Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
  friend Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
  friend Multivector operator*(Multivector a, const Scalar& s) { return a *= s; }
  friend Multivector operator*(const Scalar& s, Multivector a) { return a *= s; }

  /// Same algebra signature, same mode, identical coefficients.
  friend bool operator==(const Multivector& a, const Multivector& b);

  /// "3 + 2*e1 - 1/2*e012"; "0" for the zero multivector.
  std::string to_string() const;

 private:
  AlgebraPtr alg_;
  NumericMode mode_;
  std::map<std::uint32_t, Scalar> terms_;
};

/// Throws AlgebraMismatch / ModeMismatch when x and y cannot be combined.
void require_compatible(const Multivector& x, const Multivector& y);

Multivector product(ProductKind kind, const Multivector& x, const Multivector& y);
Multivector geometric_product(const Multivector& x, const Multivector& y);
Multivector outer_product(const Multivector& x, const Multivector& y);
Multivector inner_product(const Multivector& x, const Multivector& y);
Multivector regressive_product(const Multivector& x, const Multivector& y);

/// Left fold of the outer product; requires at least two factors.
Multivector outer_join(std::span<const Multivector> factors);

Multivector reverse(const Multivector& x);
Multivector right_complement(const Multivector& x);
Multivector left_complement(const Multivector& x);

/// Throws GradeOutOfRange unless 0 <= k <= d.
Multivector grade_project(const Multivector& x, int k);

struct SandwichResult {
  Multivector value;
  std::vector<std::string> warnings;
};

/// r x reverse(r). Warns when r mixes parities or the grade set of x is not
/// preserved.
SandwichResult sandwich(const Multivector& r, const Multivector& x);

struct NormValue {
  Scalar squared;                // |<x reverse(x)>_0|, exact in rational mode
  double value = 0.0;            // float square root
  std::optional<Scalar> exact;   // exact square root when it is rational
};

NormValue norm(const Multivector& x);

/// Euclidean norm of the coefficients on blades that contain a degenerate
/// generator (the "weight" part in a projective algebra).
NormValue weight_norm(const Multivector& x);

/// Measure of the k-simplex whose join is x: weight_norm(x) / k!.
/// Length for k = 1, area for k = 2, volume for k = 3.
NormValue simplex_measure(const Multivector& x, int k);

}  // namespace phg
