#include "phg/multivector.hpp"

#include <algorithm>
#include <cmath>

#include "phg/error.hpp"

namespace phg {

Multivector::Multivector(AlgebraPtr alg, NumericMode mode) : alg_(std::move(alg)), mode_(mode) {
  if (!alg_) throw Error(ErrorCode::InvalidArgument, "multivector requires an algebra");
}

Multivector Multivector::scalar(AlgebraPtr alg, const Scalar& value) {
  return blade(std::move(alg), Blade{0}, value);
}

Multivector Multivector::blade(AlgebraPtr alg, Blade b, const Scalar& value) {
  Multivector mv(std::move(alg), value.mode());
  mv.set(b, value);
  return mv;
}

Multivector Multivector::from_dense(AlgebraPtr alg, NumericMode mode, std::span<const Scalar> coefficients) {
  Multivector mv(std::move(alg), mode);
  if (coefficients.size() != mv.algebra().size()) {
    throw Error(ErrorCode::InvalidArgument, "expected " + std::to_string(mv.algebra().size()) +
                                                " coefficients, got " + std::to_string(coefficients.size()));
  }
  for (std::uint32_t m = 0; m < coefficients.size(); ++m) mv.set(Blade{m}, coefficients[m]);
  mv.canonicalize();
  return mv;
}

Scalar Multivector::get(Blade b) const {
  auto it = terms_.find(b.mask);
  return it == terms_.end() ? Scalar::zero(mode_) : it->second;
}

void Multivector::set(Blade b, const Scalar& value) {
  if (!alg_->valid(b)) {
    throw Error(ErrorCode::InvalidArgument, "blade mask " + std::to_string(b.mask) + " is outside " +
                                                alg_->signature().to_string());
  }
  if (value.mode() != mode_) throw Error(ErrorCode::ModeMismatch, "coefficient mode differs from multivector mode");
  if (value.is_zero()) {
    terms_.erase(b.mask);
  } else {
    terms_[b.mask] = value;
  }
}

void Multivector::accumulate(Blade b, const Scalar& value) {
  auto [it, inserted] = terms_.try_emplace(b.mask, value);
  if (!inserted) it->second += value;
}

void Multivector::canonicalize() {
  if (mode_ == NumericMode::ExactRational) {
    std::erase_if(terms_, [](const auto& kv) { return kv.second.is_zero(); });
    return;
  }
  double largest = 0.0;
  for (const auto& [mask, c] : terms_) largest = std::max(largest, std::fabs(c.float_value()));
  const double cutoff = kFloatZeroThreshold * largest;
  std::erase_if(terms_, [cutoff](const auto& kv) {
    double v = std::fabs(kv.second.float_value());
    return v == 0.0 || v < cutoff;
  });
}

GradeSet Multivector::grade_set() const {
  std::uint32_t bits = 0;
  for (const auto& [mask, c] : terms_) bits |= 1u << std::popcount(mask);
  return GradeSet::from_bits(bits);
}

std::vector<Scalar> Multivector::dense() const {
  std::vector<Scalar> out(alg_->size(), Scalar::zero(mode_));
  for (const auto& [mask, c] : terms_) out[mask] = c;
  return out;
}

Multivector& Multivector::operator+=(const Multivector& o) {
  require_compatible(*this, o);
  for (const auto& [mask, c] : o.terms_) accumulate(Blade{mask}, c);
  canonicalize();
  return *this;
}

Multivector& Multivector::operator-=(const Multivector& o) {
  require_compatible(*this, o);
  for (const auto& [mask, c] : o.terms_) accumulate(Blade{mask}, -c);
  canonicalize();
  return *this;
}

Multivector& Multivector::operator*=(const Scalar& s) {
  if (s.mode() != mode_) throw Error(ErrorCode::ModeMismatch, "scalar mode differs from multivector mode");
  for (auto& [mask, c] : terms_) c *= s;
  canonicalize();
  return *this;
}

Multivector Multivector::operator-() const {
  Multivector out = *this;
  for (auto& [mask, c] : out.terms_) c = -c;
  return out;
}

bool operator==(const Multivector& a, const Multivector& b) {
  return a.alg_->signature() == b.alg_->signature() && a.mode_ == b.mode_ && a.terms_ == b.terms_;
}

std::string Multivector::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [mask, c] : terms_) {
    Scalar mag = c.abs();
    if (first) {
      if (c.sign() < 0) out += "-";
    } else {
      out += c.sign() < 0 ? " - " : " + ";
    }
    first = false;
    if (mask == 0) {
      out += mag.to_string();
    } else {
      if (!(mag == Scalar::one(mode_))) out += mag.to_string() + "*";
      out += alg_->blade_name(Blade{mask});
    }
  }
  return out;
}

void require_compatible(const Multivector& x, const Multivector& y) {
  if (!(x.algebra().signature() == y.algebra().signature())) {
    throw Error(ErrorCode::AlgebraMismatch, "operands belong to " + x.algebra().signature().to_string() + " and " +
                                                y.algebra().signature().to_string());
  }
  if (x.mode() != y.mode()) {
    throw Error(ErrorCode::ModeMismatch, "operands use different numeric modes");
  }
}

Multivector product(ProductKind kind, const Multivector& x, const Multivector& y) {
  require_compatible(x, y);
  const Algebra& alg = x.algebra();
  Multivector out(x.algebra_ptr(), x.mode());
  for (const auto& [am, ac] : x.terms()) {
    for (const auto& [bm, bc] : y.terms()) {
      const CayleyEntry& e = alg.contribution(kind, Blade{am}, Blade{bm});
      if (e.sign == 0) continue;
      Scalar term = ac * bc;
      out.accumulate(e.result, e.sign > 0 ? term : -term);
    }
  }
  out.canonicalize();
  return out;
}

Multivector geometric_product(const Multivector& x, const Multivector& y) { return product(ProductKind::GP, x, y); }
Multivector outer_product(const Multivector& x, const Multivector& y) { return product(ProductKind::Outer, x, y); }
Multivector inner_product(const Multivector& x, const Multivector& y) { return product(ProductKind::Inner, x, y); }
Multivector regressive_product(const Multivector& x, const Multivector& y) {
  return product(ProductKind::Regressive, x, y);
}

Multivector outer_join(std::span<const Multivector> factors) {
  if (factors.size() < 2) throw Error(ErrorCode::ArityMismatch, "join needs at least two factors");
  Multivector acc = factors[0];
  for (std::size_t i = 1; i < factors.size(); ++i) acc = outer_product(acc, factors[i]);
  return acc;
}

Multivector reverse(const Multivector& x) {
  Multivector out = x;
  for (const auto& [mask, c] : x.terms()) {
    int k = std::popcount(mask);
    if ((k * (k - 1) / 2) % 2 != 0) out.set(Blade{mask}, -c);
  }
  return out;
}

namespace {

template <typename ComplementFn>
Multivector complement_with(const Multivector& x, ComplementFn fn) {
  Multivector out(x.algebra_ptr(), x.mode());
  for (const auto& [mask, c] : x.terms()) {
    CayleyEntry e = fn(Blade{mask});
    out.set(e.result, e.sign > 0 ? c : -c);
  }
  return out;
}

}  // namespace

Multivector right_complement(const Multivector& x) {
  return complement_with(x, [&](Blade b) { return x.algebra().right_complement(b); });
}

Multivector left_complement(const Multivector& x) {
  return complement_with(x, [&](Blade b) { return x.algebra().left_complement(b); });
}

Multivector grade_project(const Multivector& x, int k) {
  if (k < 0 || k > x.algebra().dim()) {
    throw Error(ErrorCode::GradeOutOfRange, "grade " + std::to_string(k) + " outside [0," +
                                                std::to_string(x.algebra().dim()) + "]");
  }
  Multivector out(x.algebra_ptr(), x.mode());
  for (const auto& [mask, c] : x.terms()) {
    if (std::popcount(mask) == k) out.set(Blade{mask}, c);
  }
  return out;
}

SandwichResult sandwich(const Multivector& r, const Multivector& x) {
  require_compatible(r, x);
  SandwichResult result{geometric_product(geometric_product(r, x), reverse(r)), {}};
  const std::uint32_t grades = r.grade_set().bits();
  constexpr std::uint32_t kEven = 0x55555555u;
  if ((grades & kEven) != 0 && (grades & ~kEven) != 0) {
    result.warnings.push_back("versor mixes even and odd grades; grade preservation is not guaranteed");
  }
  if (!result.value.is_zero() && !x.is_zero() && !result.value.grade_set().is_subset_of(x.grade_set())) {
    result.warnings.push_back("sandwich result grades " + result.value.grade_set().to_string() +
                              " differ from operand grades " + x.grade_set().to_string());
  }
  return result;
}

NormValue norm(const Multivector& x) {
  Scalar s = geometric_product(x, reverse(x)).get(Blade{0}).abs();
  NormValue out{s, std::sqrt(s.to_double()), std::nullopt};
  if (s.is_exact()) {
    if (auto root = exact_sqrt(s.rational())) out.exact = Scalar(*root);
  } else {
    out.exact = Scalar(out.value);
  }
  return out;
}

NormValue weight_norm(const Multivector& x) {
  const Algebra& alg = x.algebra();
  std::uint32_t degenerate = 0;
  for (int g = 0; g < alg.dim(); ++g) {
    if (alg.generator_square(g) == 0) degenerate |= 1u << g;
  }
  Scalar s = Scalar::zero(x.mode());
  for (auto& [mask, c] : x.terms()) {
    if (mask & degenerate) s += c * c;
  }
  NormValue out{s, std::sqrt(s.to_double()), std::nullopt};
  if (s.is_exact()) {
    if (auto root = exact_sqrt(s.rational())) out.exact = Scalar(*root);
  } else {
    out.exact = Scalar(out.value);
  }
  return out;
}

NormValue simplex_measure(const Multivector& x, int k) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "simplex order must be at least 1");
  long f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  NormValue w = weight_norm(x);
  const Scalar inv = Scalar::from_ratio(1, f, x.mode());
  NormValue out{w.squared * inv * inv, w.value / static_cast<double>(f), std::nullopt};
  if (w.exact) out.exact = *w.exact * inv;
  return out;
}

}  // namespace phg
