#include "phg/units.hpp"

#include <algorithm>
#include <cstdlib>

#include "phg/error.hpp"

namespace phg {

bool UnitVector::is_dimensionless() const {
  return std::all_of(exponents.begin(), exponents.end(), [](std::int64_t e) { return e == 0; });
}

UnitVector& UnitVector::operator+=(const UnitVector& o) {
  if (o.size() != size()) throw Error(ErrorCode::InvalidArgument, "unit vectors of different width");
  for (std::size_t i = 0; i < size(); ++i) exponents[i] += o.exponents[i];
  return *this;
}

UnitVector& UnitVector::operator-=(const UnitVector& o) {
  if (o.size() != size()) throw Error(ErrorCode::InvalidArgument, "unit vectors of different width");
  for (std::size_t i = 0; i < size(); ++i) exponents[i] -= o.exponents[i];
  return *this;
}

UnitVector parse_unit(std::string_view text, std::span<const std::string> bases) {
  UnitVector out = UnitVector::dimensionless(bases.size());
  std::string s;
  for (char c : text) {
    if (c != ' ') s.push_back(c);
  }
  if (s.empty()) throw Error(ErrorCode::InvalidArgument, "empty unit");
  std::size_t pos = 0;
  int sign = 1;
  while (pos <= s.size()) {
    std::size_t next = s.find_first_of("*/", pos);
    std::string factor = s.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
    if (factor.empty()) throw Error(ErrorCode::InvalidArgument, "malformed unit '" + s + "'");
    if (factor != "1") {
      std::string name = factor;
      std::int64_t exponent = 1;
      if (auto caret = factor.find('^'); caret != std::string::npos) {
        name = factor.substr(0, caret);
        std::string exp_text = factor.substr(caret + 1);
        char* end = nullptr;
        exponent = std::strtoll(exp_text.c_str(), &end, 10);
        if (exp_text.empty() || *end != '\0') {
          throw Error(ErrorCode::InvalidArgument, "malformed exponent in unit '" + s + "'");
        }
      }
      auto it = std::find(bases.begin(), bases.end(), name);
      if (it == bases.end()) throw Error(ErrorCode::InvalidArgument, "unknown base unit '" + name + "'");
      out.exponents[static_cast<std::size_t>(it - bases.begin())] += sign * exponent;
    }
    if (next == std::string::npos) break;
    sign = s[next] == '/' ? -1 : 1;
    pos = next + 1;
  }
  return out;
}

std::string format_unit(const UnitVector& unit, std::span<const std::string> bases) {
  std::string num, den;
  for (std::size_t i = 0; i < unit.size() && i < bases.size(); ++i) {
    std::int64_t e = unit.exponents[i];
    if (e == 0) continue;
    std::string& side = e > 0 ? num : den;
    if (!side.empty()) side += "*";
    side += bases[i];
    if (std::llabs(e) != 1) side += "^" + std::to_string(std::llabs(e));
  }
  if (num.empty() && den.empty()) return "1";
  if (num.empty()) num = "1";
  return den.empty() ? num : num + "/" + den;
}

}  // namespace phg
