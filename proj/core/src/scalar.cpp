#include "phg/scalar.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>

#include "phg/error.hpp"

namespace phg {

std::string_view to_string(NumericMode mode) {
  return mode == NumericMode::Float64 ? "float" : "exact";
}

namespace {

void require_same_mode(const Scalar& a, const Scalar& b) {
  if (a.mode() != b.mode()) {
    throw Error(ErrorCode::ModeMismatch, "scalar arithmetic mixes float and exact modes");
  }
}

Rational pow10(long exp) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(exp));
  return Rational(p);
}

// Exact value of a decimal literal such as "-12.5e-3".
Rational parse_decimal(std::string_view text) {
  std::string s(text);
  std::string mantissa = s;
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string::npos) {
    mantissa = s.substr(0, e);
    char* end = nullptr;
    std::string exp_text = s.substr(e + 1);
    exponent = std::strtol(exp_text.c_str(), &end, 10);
    if (exp_text.empty() || *end != '\0') {
      throw Error(ErrorCode::SyntaxError, "malformed number '" + s + "'");
    }
  }
  bool negative = false;
  if (!mantissa.empty() && (mantissa[0] == '-' || mantissa[0] == '+')) {
    negative = mantissa[0] == '-';
    mantissa.erase(0, 1);
  }
  std::string digits;
  long frac_digits = 0;
  bool seen_dot = false;
  for (char c : mantissa) {
    if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else if (c >= '0' && c <= '9') {
      digits.push_back(c);
      if (seen_dot) ++frac_digits;
    } else {
      throw Error(ErrorCode::SyntaxError, "malformed number '" + s + "'");
    }
  }
  if (digits.empty()) throw Error(ErrorCode::SyntaxError, "malformed number '" + s + "'");
  Rational value{mpz_class(digits, 10)};
  long scale = exponent - frac_digits;
  if (scale > 0) value *= pow10(scale);
  if (scale < 0) value /= pow10(-scale);
  value.canonicalize();
  return negative ? Rational(-value) : value;
}

}  // namespace

Scalar Scalar::zero(NumericMode mode) { return from_int(0, mode); }
Scalar Scalar::one(NumericMode mode) { return from_int(1, mode); }

Scalar Scalar::from_int(long v, NumericMode mode) {
  if (mode == NumericMode::Float64) return Scalar(static_cast<double>(v));
  return Scalar(Rational(v));
}

Scalar Scalar::from_ratio(long num, long den, NumericMode mode) {
  if (den == 0) throw Error(ErrorCode::InvalidArgument, "zero denominator");
  if (mode == NumericMode::Float64) return Scalar(static_cast<double>(num) / static_cast<double>(den));
  return Scalar(Rational(num, den));
}

Scalar Scalar::parse(std::string_view text, NumericMode mode) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) throw Error(ErrorCode::SyntaxError, "empty number");
  Rational value;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Rational num = parse_decimal(text.substr(0, slash));
    Rational den = parse_decimal(text.substr(slash + 1));
    if (den == 0) throw Error(ErrorCode::SyntaxError, "zero denominator in '" + std::string(text) + "'");
    value = num / den;
  } else {
    value = parse_decimal(text);
  }
  if (mode == NumericMode::ExactRational) return Scalar(value);
  if (text.find('/') == std::string_view::npos) {
    // Round-trip-correct parse for plain decimals.
    double d = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), d);
    if (ec == std::errc() && ptr == text.data() + text.size()) return Scalar(d);
  }
  return Scalar(value.get_d());
}

bool Scalar::is_zero() const {
  if (auto d = std::get_if<double>(&value_)) return *d == 0.0;
  return sgn(std::get<Rational>(value_)) == 0;
}

int Scalar::sign() const {
  if (auto d = std::get_if<double>(&value_)) return (*d > 0) - (*d < 0);
  return sgn(std::get<Rational>(value_));
}

double Scalar::to_double() const {
  if (auto d = std::get_if<double>(&value_)) return *d;
  return std::get<Rational>(value_).get_d();
}

Scalar Scalar::abs() const { return sign() < 0 ? -*this : *this; }

Scalar Scalar::operator-() const {
  if (auto d = std::get_if<double>(&value_)) return Scalar(-*d);
  return Scalar(Rational(-std::get<Rational>(value_)));
}

Scalar& Scalar::operator+=(const Scalar& o) {
  require_same_mode(*this, o);
  if (auto d = std::get_if<double>(&value_)) {
    *d += std::get<double>(o.value_);
  } else {
    std::get<Rational>(value_) += std::get<Rational>(o.value_);
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  require_same_mode(*this, o);
  if (auto d = std::get_if<double>(&value_)) {
    *d -= std::get<double>(o.value_);
  } else {
    std::get<Rational>(value_) -= std::get<Rational>(o.value_);
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  require_same_mode(*this, o);
  if (auto d = std::get_if<double>(&value_)) {
    *d *= std::get<double>(o.value_);
  } else {
    std::get<Rational>(value_) *= std::get<Rational>(o.value_);
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  require_same_mode(*this, o);
  if (o.is_zero()) throw Error(ErrorCode::InvalidArgument, "division by zero");
  if (auto d = std::get_if<double>(&value_)) {
    *d /= std::get<double>(o.value_);
  } else {
    std::get<Rational>(value_) /= std::get<Rational>(o.value_);
  }
  return *this;
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.mode() != b.mode()) return false;
  if (a.is_exact()) return a.rational() == b.rational();
  return a.float_value() == b.float_value();
}

std::string Scalar::to_string() const {
  if (auto d = std::get_if<double>(&value_)) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, *d);
    (void)ec;
    return std::string(buf, ptr);
  }
  return std::get<Rational>(value_).get_str();
}

std::optional<Rational> exact_sqrt(const Rational& value) {
  if (sgn(value) < 0) return std::nullopt;
  const mpz_class& num = value.get_num();
  const mpz_class& den = value.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) {
    return std::nullopt;
  }
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  Rational r(rn, rd);
  r.canonicalize();
  return r;
}

}  // namespace phg
