#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace phg {

/// Set of grades {0..d} carried by a multivector-valued node.
/// `unknown` (no information yet) and `structural_zero` (provably vanishing)
/// are distinct from every ordinary set.
class GradeSet {
 public:
  enum class State : std::uint8_t { Unknown, Known, StructuralZero };

  GradeSet() = default;

  static GradeSet unknown() { return GradeSet(); }
  static GradeSet structural_zero() { return GradeSet(State::StructuralZero, 0); }
  static GradeSet from_bits(std::uint32_t bits) {
    return bits == 0 ? structural_zero() : GradeSet(State::Known, bits);
  }
  static GradeSet of(std::initializer_list<int> grades) {
    std::uint32_t bits = 0;
    for (int g : grades) bits |= 1u << g;
    return from_bits(bits);
  }
  static GradeSet singleton(int grade) { return from_bits(1u << grade); }
  /// {0, 1, ..., d}
  static GradeSet full(int d) { return from_bits((1u << (d + 1)) - 1); }

  State state() const { return state_; }
  bool is_unknown() const { return state_ == State::Unknown; }
  bool is_known() const { return state_ == State::Known; }
  bool is_structural_zero() const { return state_ == State::StructuralZero; }

  std::uint32_t bits() const { return bits_; }
  bool contains(int grade) const { return grade >= 0 && grade < 32 && (bits_ >> grade) & 1u; }
  int size() const { return std::popcount(bits_); }
  bool is_singleton() const { return is_known() && size() == 1; }
  int single() const { return std::countr_zero(bits_); }
  int max_grade() const { return bits_ == 0 ? -1 : 31 - std::countl_zero(bits_); }

  std::vector<int> grades() const {
    std::vector<int> out;
    for (std::uint32_t b = bits_; b; b &= b - 1) out.push_back(std::countr_zero(b));
    return out;
  }

  bool is_subset_of(const GradeSet& o) const { return (bits_ & ~o.bits_) == 0; }
  bool intersects(const GradeSet& o) const { return (bits_ & o.bits_) != 0; }
  GradeSet intersect(const GradeSet& o) const { return from_bits(bits_ & o.bits_); }
  GradeSet unite(const GradeSet& o) const { return from_bits(bits_ | o.bits_); }

  friend bool operator==(const GradeSet&, const GradeSet&) = default;

  /// "{1,3}", "?" for unknown, "ZERO" for structural zero.
  std::string to_string() const {
    if (is_unknown()) return "?";
    if (is_structural_zero()) return "ZERO";
    std::string s = "{";
    bool first = true;
    for (int g : grades()) {
      if (!first) s += ",";
      s += std::to_string(g);
      first = false;
    }
    return s + "}";
  }

 private:
  GradeSet(State s, std::uint32_t bits) : state_(s), bits_(bits) {}

  State state_ = State::Unknown;
  std::uint32_t bits_ = 0;
};

}  // namespace phg
