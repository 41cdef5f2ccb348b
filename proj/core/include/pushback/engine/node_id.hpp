#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <limits>

namespace pushback {

/// Index of a node within one scenario. Stable for the lifetime of a run.
struct NodeId {
  std::uint32_t index = std::numeric_limits<std::uint32_t>::max();

  constexpr bool valid() const { return index != std::numeric_limits<std::uint32_t>::max(); }
  constexpr auto operator<=>(const NodeId&) const = default;
};

inline constexpr NodeId kNoNode{};

}  // namespace pushback

template <>
struct std::hash<pushback::NodeId> {
  std::size_t operator()(pushback::NodeId id) const noexcept { return std::hash<std::uint32_t>{}(id.index); }
};
