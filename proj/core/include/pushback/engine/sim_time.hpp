#pragma once

#include <compare>
#include <cstdint>
#include <limits>

namespace pushback {

/// Virtual time in integer nanoseconds. Also used for durations.
struct SimTime {
  std::uint64_t ns = 0;

  static constexpr SimTime nanos(std::uint64_t n) { return SimTime{n}; }
  static constexpr SimTime micros(std::uint64_t us) { return SimTime{us * 1'000ULL}; }
  static constexpr SimTime millis(std::uint64_t ms) { return SimTime{ms * 1'000'000ULL}; }
  static constexpr SimTime seconds(std::uint64_t s) { return SimTime{s * 1'000'000'000ULL}; }
  static constexpr SimTime max() { return SimTime{std::numeric_limits<std::uint64_t>::max()}; }

  constexpr std::uint64_t count() const { return ns; }

  constexpr auto operator<=>(const SimTime&) const = default;

  constexpr SimTime& operator+=(SimTime d) {
    ns += d.ns;
    return *this;
  }
};

constexpr SimTime operator+(SimTime a, SimTime b) { return SimTime{a.ns + b.ns}; }

/// Saturates at zero; callers compare before subtracting when order matters.
constexpr SimTime operator-(SimTime a, SimTime b) { return SimTime{a.ns > b.ns ? a.ns - b.ns : 0}; }

constexpr SimTime operator*(SimTime a, std::uint64_t k) { return SimTime{a.ns * k}; }

/// Adds without wrapping past SimTime::max().
constexpr SimTime saturating_add(SimTime a, SimTime b) {
  return b.ns > SimTime::max().ns - a.ns ? SimTime::max() : SimTime{a.ns + b.ns};
}

}  // namespace pushback
