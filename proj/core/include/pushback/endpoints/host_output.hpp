#pragma once

#include <cstdint>
#include <vector>

#include "pushback/engine/sim_time.hpp"
#include "pushback/net/packet.hpp"

namespace pushback::endpoints {

enum class HostTimerKind : std::uint8_t { Retransmit, SolveDone };

struct HostTimer {
  SimTime at;
  HostTimerKind kind = HostTimerKind::Retransmit;
  std::uint64_t key = 0;
};

/// What a host handler wants done: packets to send now and timers to arm.
struct HostOutput {
  std::vector<net::Packet> send;
  std::vector<HostTimer> timers;
};

}  // namespace pushback::endpoints
