#pragma once

#include <bit>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace phg {

/// Default ceiling on the generator count; 2^d blades must stay desk-scale.
inline constexpr int kDefaultDimensionCeiling = 8;

/// Metric signature Cl(p, q, r): p generators square to +1, q to -1, r to 0.
struct Signature {
  int p = 0;
  int q = 0;
  int r = 0;

  int dim() const { return p + q + r; }
  friend bool operator==(const Signature&, const Signature&) = default;
  std::string to_string() const;  // "Cl(3,0,1)"
};

/// Basis blade as a bit-set of generators.
struct Blade {
  std::uint32_t mask = 0;

  int grade() const { return std::popcount(mask); }
  friend auto operator<=>(const Blade&, const Blade&) = default;
};

struct CayleyEntry {
  int sign = 0;  // -1, 0, +1
  Blade result;
};

enum class ProductKind { GP, Outer, Inner, Regressive };

inline constexpr ProductKind kAllProductKinds[] = {ProductKind::GP, ProductKind::Outer,
                                                   ProductKind::Inner, ProductKind::Regressive};

std::string_view to_string(ProductKind kind);
/// Accepts "gp", "outer", "inner", "regressive" (case-insensitive).
ProductKind parse_product_kind(std::string_view text);

/// Reordering sign of the concatenated generator sequence a·b, no contraction.
int reorder_sign(Blade a, Blade b);

/// A Clifford algebra with its generated Cayley table.
///
/// Generators are ordered degenerate first, then positive, then negative;
/// generator i is bit i of a blade mask. Blades are listed in ascending mask
/// order. Instances are immutable after construction and may be shared
/// across threads.
class Algebra {
 public:
  explicit Algebra(Signature sig, int ceiling = kDefaultDimensionCeiling);

  const Signature& signature() const { return sig_; }
  int dim() const { return sig_.dim(); }
  std::uint32_t size() const { return 1u << dim(); }
  Blade pseudoscalar() const { return Blade{size() - 1}; }

  /// +1, -1 or 0.
  int generator_square(int generator) const { return metric_[static_cast<std::size_t>(generator)]; }
  bool is_degenerate() const { return sig_.r > 0; }

  const std::vector<Blade>& blades() const { return blades_; }
  std::vector<Blade> blades_of_grade(int grade) const;
  bool valid(Blade b) const { return b.mask < size(); }

  /// Geometric-product entry from the stored table.
  const CayleyEntry& cayley(Blade a, Blade b) const { return tables_[0][index(a, b)]; }
  /// Per-kind contribution of a blade pair: sign 0 when the kind discards it.
  const CayleyEntry& contribution(ProductKind kind, Blade a, Blade b) const {
    return tables_[static_cast<std::size_t>(kind)][index(a, b)];
  }

  /// Non-metric complements: a ∧ right_complement(a) = +I and
  /// left_complement(a) ∧ a = +I. They are mutually inverse.
  CayleyEntry right_complement(Blade a) const;
  CayleyEntry left_complement(Blade a) const;

  std::string generator_name(int generator) const;
  std::string blade_name(Blade b) const;  // "1", "e1", "e023"
  /// Inverse of blade_name; throws InvalidArgument on unknown names.
  Blade parse_blade(std::string_view name) const;

 private:
  std::size_t index(Blade a, Blade b) const {
    return static_cast<std::size_t>(a.mask) * size() + b.mask;
  }

  Signature sig_;
  std::vector<int> metric_;
  std::vector<Blade> blades_;
  std::vector<CayleyEntry> tables_[4];
};

/// Throws DimensionCeilingExceeded when sig.dim() > ceiling.
std::shared_ptr<const Algebra> build_algebra(Signature sig, int ceiling = kDefaultDimensionCeiling);

/// Sign and result of the geometric product of two basis blades, computed
/// directly from the metric (transposition count, then contraction of
/// repeated generators).
CayleyEntry blade_product(const Algebra& alg, Blade a, Blade b);

}  // namespace phg
