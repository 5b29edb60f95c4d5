#include "phg/algebra.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>

#include "phg/error.hpp"

namespace phg {

std::string Signature::to_string() const {
  return "Cl(" + std::to_string(p) + "," + std::to_string(q) + "," + std::to_string(r) + ")";
}

std::string_view to_string(ProductKind kind) {
  switch (kind) {
    case ProductKind::GP: return "gp";
    case ProductKind::Outer: return "outer";
    case ProductKind::Inner: return "inner";
    case ProductKind::Regressive: return "regressive";
  }
  return "?";
}

ProductKind parse_product_kind(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "gp" || lower == "geometric") return ProductKind::GP;
  if (lower == "outer" || lower == "wedge") return ProductKind::Outer;
  if (lower == "inner" || lower == "dot") return ProductKind::Inner;
  if (lower == "regressive" || lower == "meet" || lower == "vee") return ProductKind::Regressive;
  throw Error(ErrorCode::InvalidArgument, "unknown product kind '" + std::string(text) + "'");
}

int reorder_sign(Blade a, Blade b) {
  // Each generator of a must pass every lower-indexed generator of b.
  int swaps = 0;
  for (std::uint32_t rest = a.mask >> 1; rest != 0; rest >>= 1) {
    swaps += std::popcount(rest & b.mask);
  }
  return (swaps & 1) ? -1 : 1;
}

CayleyEntry blade_product(const Algebra& alg, Blade a, Blade b) {
  int sign = reorder_sign(a, b);
  for (std::uint32_t common = a.mask & b.mask; common != 0; common &= common - 1) {
    sign *= alg.generator_square(std::countr_zero(common));
  }
  if (sign == 0) return CayleyEntry{0, Blade{0}};
  return CayleyEntry{sign, Blade{a.mask ^ b.mask}};
}

Algebra::Algebra(Signature sig, int ceiling) : sig_(sig) {
  if (sig.p < 0 || sig.q < 0 || sig.r < 0) {
    throw Error(ErrorCode::InvalidArgument, "negative signature count in " + sig.to_string());
  }
  if (sig.dim() > ceiling) {
    throw Error(ErrorCode::DimensionCeilingExceeded,
                sig.to_string() + " has " + std::to_string(sig.dim()) +
                    " generators; ceiling is " + std::to_string(ceiling));
  }
  metric_.reserve(static_cast<std::size_t>(dim()));
  metric_.insert(metric_.end(), static_cast<std::size_t>(sig.r), 0);
  metric_.insert(metric_.end(), static_cast<std::size_t>(sig.p), 1);
  metric_.insert(metric_.end(), static_cast<std::size_t>(sig.q), -1);

  for (std::uint32_t m = 0; m < size(); ++m) blades_.push_back(Blade{m});

  const std::uint32_t n = size();
  for (auto& t : tables_) t.resize(static_cast<std::size_t>(n) * n);
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = 0; j < n; ++j) {
      Blade a{i}, b{j};
      std::size_t k = index(a, b);
      CayleyEntry gp = blade_product(*this, a, b);
      tables_[static_cast<std::size_t>(ProductKind::GP)][k] = gp;

      CayleyEntry outer{};
      if ((i & j) == 0) outer = CayleyEntry{reorder_sign(a, b), Blade{i | j}};
      tables_[static_cast<std::size_t>(ProductKind::Outer)][k] = outer;

      CayleyEntry inner{};
      if (gp.sign != 0 && gp.result.grade() == std::abs(a.grade() - b.grade())) inner = gp;
      tables_[static_cast<std::size_t>(ProductKind::Inner)][k] = inner;

      // lc(rc(a) ∧ rc(b)); nonzero only when the complements are disjoint.
      CayleyEntry regressive{};
      CayleyEntry ra = right_complement(a);
      CayleyEntry rb = right_complement(b);
      if ((ra.result.mask & rb.result.mask) == 0) {
        Blade joined{ra.result.mask | rb.result.mask};
        CayleyEntry back = left_complement(joined);
        regressive = CayleyEntry{ra.sign * rb.sign * reorder_sign(ra.result, rb.result) * back.sign,
                                 back.result};
      }
      tables_[static_cast<std::size_t>(ProductKind::Regressive)][k] = regressive;
    }
  }
}

std::vector<Blade> Algebra::blades_of_grade(int grade) const {
  std::vector<Blade> out;
  for (Blade b : blades_) {
    if (b.grade() == grade) out.push_back(b);
  }
  return out;
}

CayleyEntry Algebra::right_complement(Blade a) const {
  Blade c{pseudoscalar().mask ^ a.mask};
  return CayleyEntry{reorder_sign(a, c), c};
}

CayleyEntry Algebra::left_complement(Blade a) const {
  Blade c{pseudoscalar().mask ^ a.mask};
  return CayleyEntry{reorder_sign(c, a), c};
}

std::string Algebra::generator_name(int generator) const {
  return "e" + std::to_string(sig_.r > 0 ? generator : generator + 1);
}

std::string Algebra::blade_name(Blade b) const {
  if (b.mask == 0) return "1";
  std::string name = "e";
  for (std::uint32_t m = b.mask; m != 0; m &= m - 1) {
    name += generator_name(std::countr_zero(m)).substr(1);
  }
  return name;
}

Blade Algebra::parse_blade(std::string_view name) const {
  if (name == "1" || name == "s" || name == "scalar") return Blade{0};
  if (name.size() < 2 || name[0] != 'e') {
    throw Error(ErrorCode::InvalidArgument, "unknown blade '" + std::string(name) + "'");
  }
  const int offset = sig_.r > 0 ? 0 : 1;
  std::uint32_t mask = 0;
  int previous = -1;
  for (char c : name.substr(1)) {
    if (c < '0' || c > '9') {
      throw Error(ErrorCode::InvalidArgument, "unknown blade '" + std::string(name) + "'");
    }
    int g = (c - '0') - offset;
    // Only canonical (ascending) generator order is accepted.
    if (g < 0 || g >= dim() || g <= previous) {
      throw Error(ErrorCode::InvalidArgument, "blade '" + std::string(name) + "' is not a canonical blade of " +
                                                  sig_.to_string());
    }
    previous = g;
    mask |= 1u << g;
  }
  return Blade{mask};
}

std::shared_ptr<const Algebra> build_algebra(Signature sig, int ceiling) {
  return std::make_shared<const Algebra>(sig, ceiling);
}

}  // namespace phg
