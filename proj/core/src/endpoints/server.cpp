#include "pushback/endpoints/server.hpp"

#include <algorithm>
#include <string>

#include "pushback/engine/error.hpp"

namespace pushback::endpoints {

using net::PacketKind;

ServerConnTable::ServerConnTable(NodeId self, ServerParams params) : self_(self), params_(params) {}

ServerResponse ServerConnTable::on_packet(const net::Packet& p, SimTime now, net::PacketFactory& factory) {
  ServerResponse out;
  const ConnKey key{p.src, p.flow_tag};
  switch (p.kind) {
    case PacketKind::Syn: {
      ++counters_.syn_received;
      if (established_.contains(key)) break;
      if (auto it = half_open_.find(key); it != half_open_.end() && it->second > now) {
        // Retransmitted SYN for a live entry: answer again, no new slot.
        out.replies.push_back(factory.make(PacketKind::SynAck, self_, p.src, p.flow_tag, now));
        break;
      }
      expire_half_open(now);
      if (half_open_.size() >= params_.backlog_capacity) {
        ++counters_.syn_dropped_backlog_full;
        out.backlog_discard = true;
        break;
      }
      const SimTime expiry = now + params_.half_open_timeout;
      half_open_.emplace(key, expiry);
      by_expiry_.emplace(expiry, key);
      max_half_open_ = std::max(max_half_open_, half_open_.size());
      out.replies.push_back(factory.make(PacketKind::SynAck, self_, p.src, p.flow_tag, now));
      break;
    }
    case PacketKind::Ack: {
      auto it = half_open_.find(key);
      if (it == half_open_.end() || it->second <= now) {
        ++counters_.acks_ignored;
        break;
      }
      by_expiry_.erase({it->second, key});
      half_open_.erase(it);
      established_.insert(key);
      ++counters_.established_total;
      break;
    }
    case PacketKind::Udp:
      ++counters_.udp_received;
      out.replies.push_back(factory.make(PacketKind::IcmpUnreach, self_, p.src, p.flow_tag, now));
      break;
    case PacketKind::Data:
      if (established_.contains(key)) ++counters_.data_absorbed;
      break;
    case PacketKind::PuzzleChallenge:
    case PacketKind::PuzzleResponse:
    case PacketKind::PushbackRequest:
    case PacketKind::BlockRequest:
      break;
    default:
      ++counters_.unknown_kind;
      break;
  }
  check_invariants();
  return out;
}

std::size_t ServerConnTable::expire_half_open(SimTime now) {
  std::size_t removed = 0;
  while (!by_expiry_.empty() && by_expiry_.begin()->first <= now) {
    half_open_.erase(by_expiry_.begin()->second);
    by_expiry_.erase(by_expiry_.begin());
    ++removed;
  }
  counters_.half_open_expired += removed;
  check_invariants();
  return removed;
}

void ServerConnTable::check_invariants() const {
  if (half_open_.size() > params_.backlog_capacity) {
    throw SimulationFault("half-open backlog exceeds capacity: " + std::to_string(half_open_.size()));
  }
  if (half_open_.size() != by_expiry_.size()) throw SimulationFault("half-open index out of sync");
}

}  // namespace pushback::endpoints
