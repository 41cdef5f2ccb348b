#pragma once

#include <cstdint>
#include <optional>

#include "pushback/endpoints/host_output.hpp"
#include "pushback/endpoints/puzzle_worker.hpp"
#include "pushback/engine/node_id.hpp"
#include "pushback/engine/sim_time.hpp"
#include "pushback/net/packet.hpp"

namespace pushback::endpoints {

enum class AttackMode { SynFlood, UdpFlood };

struct AttackerParams {
  std::uint32_t rate_pps = 500;
  AttackMode mode = AttackMode::SynFlood;
  bool smart = false;  // solves puzzles when true
  SimTime start{};
  SimTime stop = SimTime::max();
  SimTime per_hash_cost = SimTime::micros(1);

  SimTime period() const { return SimTime{1'000'000'000ULL / rate_pps}; }
};

struct AttackerCounters {
  std::uint64_t emitted = 0;
  std::uint64_t skipped_while_solving = 0;
  std::uint64_t feedback_ignored = 0;
  std::uint64_t challenges_ignored = 0;
};

/// Flooder that never reacts to feedback. SYN floods never complete the handshake.
class Attacker {
 public:
  Attacker(NodeId self, NodeId victim, AttackerParams params);

  /// One emission slot. Empty outside [start, stop) or while solving.
  std::optional<net::Packet> tick(SimTime now, net::PacketFactory& factory);

  HostOutput on_packet(const net::Packet& p, SimTime now, net::PacketFactory& factory);
  HostOutput on_timer(const HostTimer& timer, SimTime now, net::PacketFactory& factory);

  const AttackerParams& params() const { return params_; }
  const AttackerCounters& counters() const { return counters_; }

 private:
  NodeId self_;
  NodeId victim_;
  AttackerParams params_;
  std::uint32_t next_tag_ = 1;
  PuzzleWorker worker_;
  AttackerCounters counters_;
};

}  // namespace pushback::endpoints
