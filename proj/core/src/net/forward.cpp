#include "pushback/net/forward.hpp"

#include "pushback/engine/error.hpp"

namespace pushback::net {

ForwardResult forward(const Topology& topo, NodeId router, const Packet& p, SimTime now, PacketFilter* filter) {
  if (p.dst == router) throw SimulationFault("forward() called for a packet addressed to the router itself");
  if (filter != nullptr) {
    switch (filter->inspect(p, now)) {
      case FilterVerdict::Blocked: return {ForwardResult::Status::Filtered, kNoNode};
      case FilterVerdict::RateLimited: return {ForwardResult::Status::RateLimited, kNoNode};
      case FilterVerdict::Pass: break;
    }
  }
  const NodeId next = topo.next_hop(router, p.dst);
  if (!next.valid() || next == router) {
    throw SimulationFault("no route from '" + topo.node(router).name + "' to '" + topo.node(p.dst).name + "'");
  }
  return {ForwardResult::Status::Forwarded, next};
}

}  // namespace pushback::net
