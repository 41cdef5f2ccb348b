#pragma once

#include <cstdint>
#include <map>
#include <optional>

#include "pushback/endpoints/host_output.hpp"
#include "pushback/engine/node_id.hpp"
#include "pushback/engine/sim_time.hpp"
#include "pushback/net/packet.hpp"

namespace pushback::endpoints {

/// Solves challenges one after another at a fixed per-hash cost.
///
/// The response for a challenge solved with minimal nonce n is released
/// (n + 1) * per_hash_cost after solving starts. Challenges arriving while
/// busy queue behind the current one.
class PuzzleWorker {
 public:
  explicit PuzzleWorker(SimTime per_hash_cost = SimTime::micros(1)) : per_hash_cost_(per_hash_cost) {}

  /// Returns the SolveDone timer for this challenge.
  HostTimer accept(NodeId self, const net::Packet& challenge, SimTime now, net::PacketFactory& factory);

  /// Builds the response prepared for `key`, if any.
  std::optional<net::Packet> finish(std::uint64_t key, SimTime now, net::PacketFactory& factory);

  bool solving(SimTime now) const { return busy_until_ > now; }
  SimTime busy_until() const { return busy_until_; }
  std::uint64_t solved() const { return solved_; }

 private:
  SimTime per_hash_cost_;
  SimTime busy_until_{};
  std::uint64_t next_key_ = 1;
  std::uint64_t solved_ = 0;
  struct Solution {
    NodeId self;
    NodeId issuer;
    std::uint64_t challenge_id = 0;
    std::uint64_t nonce = 0;
  };
  std::map<std::uint64_t, Solution> ready_;
};

}  // namespace pushback::endpoints
