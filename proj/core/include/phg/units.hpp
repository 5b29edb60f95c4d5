#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace phg {

/// Exponent vector over the program's declared base units.
struct UnitVector {
  std::vector<std::int64_t> exponents;

  static UnitVector dimensionless(std::size_t n) { return UnitVector{std::vector<std::int64_t>(n, 0)}; }

  std::size_t size() const { return exponents.size(); }
  bool is_dimensionless() const;

  UnitVector& operator+=(const UnitVector& o);
  UnitVector& operator-=(const UnitVector& o);
  friend UnitVector operator+(UnitVector a, const UnitVector& b) { return a += b; }
  friend UnitVector operator-(UnitVector a, const UnitVector& b) { return a -= b; }
  friend bool operator==(const UnitVector&, const UnitVector&) = default;
};

/// Parses "kg*m/s^2", "m^2", "1". Unknown base names throw InvalidArgument.
UnitVector parse_unit(std::string_view text, std::span<const std::string> bases);
/// Inverse of parse_unit: positive exponents first, "1" when dimensionless.
std::string format_unit(const UnitVector& unit, std::span<const std::string> bases);

}  // namespace phg
