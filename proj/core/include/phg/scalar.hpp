#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace phg {

enum class NumericMode { Float64, ExactRational };

std::string_view to_string(NumericMode mode);

using Rational = mpq_class;

/// A coefficient that is either a binary64 float or an exact rational.
/// Arithmetic between scalars of different modes throws ModeMismatch.
class Scalar {
 public:
  Scalar() : value_(0.0) {}
  explicit Scalar(double v) : value_(v) {}
  explicit Scalar(Rational v) : value_(std::move(v)) { std::get<Rational>(value_).canonicalize(); }

  static Scalar zero(NumericMode mode);
  static Scalar one(NumericMode mode);
  static Scalar from_int(long v, NumericMode mode);
  static Scalar from_ratio(long num, long den, NumericMode mode);

  /// Accepts "3", "-2/7", "0.125", "1e-9". Decimal text is converted exactly
  /// in rational mode.
  static Scalar parse(std::string_view text, NumericMode mode);

  NumericMode mode() const {
    return std::holds_alternative<double>(value_) ? NumericMode::Float64
                                                  : NumericMode::ExactRational;
  }
  bool is_exact() const { return mode() == NumericMode::ExactRational; }

  bool is_zero() const;
  int sign() const;
  double to_double() const;
  const Rational& rational() const { return std::get<Rational>(value_); }
  double float_value() const { return std::get<double>(value_); }

  Scalar abs() const;
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  /// Division; throws InvalidArgument on a zero divisor.
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  /// Exact equality for rationals, bitwise value equality for floats.
  friend bool operator==(const Scalar& a, const Scalar& b);

  /// Rational as "num/den" (or "num"), float as shortest round-trip text.
  std::string to_string() const;

 private:
  std::variant<double, Rational> value_;
};

/// Square root of a rational when numerator and denominator are perfect squares.
std::optional<Rational> exact_sqrt(const Rational& value);

}  // namespace phg
