#pragma once

#include <cstdint>

#include "pushback/engine/ratio.hpp"

namespace pushback {

/// SplitMix64. The only source of randomness in a run.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed = 0) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1) from the top 53 bits of one draw.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// One draw; true iff u < p where u = (draw >> 11) / 2^53. Exact for rational p.
  bool bernoulli(Ratio p) {
    const std::uint64_t u53 = next() >> 11;
    if (p.den == 0) return false;
    return static_cast<unsigned __int128>(u53) * p.den < (static_cast<unsigned __int128>(p.num) << 53);
  }

  std::uint64_t state() const { return state_; }

 private:
  std::uint64_t state_;
};

}  // namespace pushback
