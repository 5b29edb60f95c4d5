#pragma once

#include <compare>
#include <cstdint>
#include <functional>

namespace phg {

struct NodeId {
  std::uint32_t value = 0;
  friend auto operator<=>(const NodeId&, const NodeId&) = default;
};

struct EdgeId {
  std::uint32_t value = 0;
  friend auto operator<=>(const EdgeId&, const EdgeId&) = default;
};

enum class Severity { Error, Warning, Note };

inline const char* to_string(Severity s) {
  switch (s) {
    case Severity::Error: return "error";
    case Severity::Warning: return "warning";
    case Severity::Note: return "note";
  }
  return "?";
}

}  // namespace phg

template <>
struct std::hash<phg::NodeId> {
  std::size_t operator()(phg::NodeId id) const noexcept { return std::hash<std::uint32_t>{}(id.value); }
};
