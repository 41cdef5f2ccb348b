#pragma once

#include "pushback/engine/node_id.hpp"
#include "pushback/engine/sim_time.hpp"
#include "pushback/net/packet.hpp"
#include "pushback/net/topology.hpp"

namespace pushback::net {

enum class FilterVerdict { Pass, Blocked, RateLimited };

/// Per-router admission hook consulted before a packet is queued onward.
class PacketFilter {
 public:
  virtual ~PacketFilter() = default;
  virtual FilterVerdict inspect(const Packet& p, SimTime now) = 0;
};

struct ForwardResult {
  enum class Status { Forwarded, Filtered, RateLimited };
  Status status = Status::Forwarded;
  NodeId next_hop;
};

/// Routing decision for a packet sitting at `router`. Filtering applies only when a filter is installed.
ForwardResult forward(const Topology& topo, NodeId router, const Packet& p, SimTime now, PacketFilter* filter);

}  // namespace pushback::net
