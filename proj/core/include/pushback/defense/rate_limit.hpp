#pragma once

#include "pushback/engine/node_id.hpp"
#include "pushback/engine/prng.hpp"
#include "pushback/engine/ratio.hpp"
#include "pushback/engine/sim_time.hpp"

namespace pushback::defense {

enum class Admission { Admit, Drop };

/// Probabilistic admission for an unvalidated suspect's traffic toward the victim.
class RateLimitEntry {
 public:
  /// Throws std::invalid_argument unless 0 < admit_fraction <= 1.
  RateLimitEntry(NodeId src, NodeId victim, Ratio admit_fraction, SimTime since);

  NodeId src() const { return src_; }
  NodeId victim() const { return victim_; }
  Ratio admit_fraction() const { return admit_fraction_; }
  SimTime since() const { return since_; }

 private:
  NodeId src_;
  NodeId victim_;
  Ratio admit_fraction_;
  SimTime since_;
};

/// One PRNG draw u in [0,1); admit iff u < admit_fraction.
Admission rate_limit_admit(const RateLimitEntry& entry, SplitMix64& prng);

}  // namespace pushback::defense
