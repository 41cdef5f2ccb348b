#include "pushback/defense/rate_limit.hpp"

#include <stdexcept>

namespace pushback::defense {

RateLimitEntry::RateLimitEntry(NodeId src, NodeId victim, Ratio admit_fraction, SimTime since)
    : src_(src), victim_(victim), admit_fraction_(admit_fraction), since_(since) {
  if (admit_fraction.den == 0 || admit_fraction.is_zero() || admit_fraction > Ratio{1, 1}) {
    throw std::invalid_argument("admit_fraction must lie in (0, 1]");
  }
}

Admission rate_limit_admit(const RateLimitEntry& entry, SplitMix64& prng) {
  return prng.bernoulli(entry.admit_fraction()) ? Admission::Admit : Admission::Drop;
}

}  // namespace pushback::defense
