#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "pushback/endpoints/host_output.hpp"
#include "pushback/endpoints/puzzle_worker.hpp"
#include "pushback/engine/node_id.hpp"
#include "pushback/engine/sim_time.hpp"
#include "pushback/net/packet.hpp"

namespace pushback::endpoints {

struct LegitParams {
  SimTime attempt_interval = SimTime::millis(500);  // zero: idle host
  SimTime initial_rto = SimTime::seconds(1);
  SimTime max_rto = SimTime::seconds(32);
  std::uint32_t max_retries = 5;
  SimTime cooldown = SimTime::seconds(5);
  SimTime per_hash_cost = SimTime::micros(1);
  SimTime start{};
  SimTime stop = SimTime::max();
};

struct LegitCounters {
  std::uint64_t attempts = 0;
  std::uint64_t syn_sent = 0;
  std::uint64_t retransmits = 0;
  std::uint64_t completed = 0;
  std::uint64_t abandoned = 0;
  std::uint64_t ticks_suppressed = 0;
};

/// Rule-following client: periodic connection attempts, exponential SYN
/// backoff, a cooldown after giving up, and it pauses to answer puzzles.
class LegitClient {
 public:
  LegitClient(NodeId self, NodeId server, LegitParams params);

  /// Periodic source tick. May open a new attempt.
  HostOutput tick(SimTime now, net::PacketFactory& factory);

  HostOutput on_packet(const net::Packet& p, SimTime now, net::PacketFactory& factory);
  HostOutput on_timer(const HostTimer& timer, SimTime now, net::PacketFactory& factory);

  const LegitCounters& counters() const { return counters_; }
  const LegitParams& params() const { return params_; }
  std::size_t pending() const { return pending_.size(); }
  SimTime cooldown_until() const { return cooldown_until_; }
  bool solving(SimTime now) const { return worker_.solving(now); }

  /// RTO values armed so far for `flow_tag`, in order.
  std::vector<SimTime> rto_history(std::uint32_t flow_tag) const;

 private:
  struct Attempt {
    SimTime first_sent;
    std::uint32_t retries = 0;
    SimTime rto;
    SimTime timer_at;
    std::vector<SimTime> rtos;
  };

  HostTimer arm(std::uint32_t tag, Attempt& a, SimTime now);

  NodeId self_;
  NodeId server_;
  LegitParams params_;
  std::uint32_t next_tag_ = 1;
  std::map<std::uint32_t, Attempt> pending_;
  std::map<std::uint32_t, std::vector<SimTime>> finished_rtos_;
  SimTime cooldown_until_{};
  PuzzleWorker worker_;
  LegitCounters counters_;
};

}  // namespace pushback::endpoints
