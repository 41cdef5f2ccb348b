#include "pushback/endpoints/attacker.hpp"

#include <stdexcept>

namespace pushback::endpoints {

using net::PacketKind;

Attacker::Attacker(NodeId self, NodeId victim, AttackerParams params)
    : self_(self), victim_(victim), params_(params), worker_(params.per_hash_cost) {
  if (params_.rate_pps == 0) throw std::invalid_argument("attacker rate must be positive");
}

std::optional<net::Packet> Attacker::tick(SimTime now, net::PacketFactory& factory) {
  if (now < params_.start || now >= params_.stop) return std::nullopt;
  if (worker_.solving(now)) {
    ++counters_.skipped_while_solving;
    return std::nullopt;
  }
  ++counters_.emitted;
  const PacketKind kind = params_.mode == AttackMode::SynFlood ? PacketKind::Syn : PacketKind::Udp;
  return factory.make(kind, self_, victim_, next_tag_++, now);
}

HostOutput Attacker::on_packet(const net::Packet& p, SimTime now, net::PacketFactory& factory) {
  HostOutput out;
  if (p.kind == PacketKind::PuzzleChallenge) {
    if (params_.smart) {
      out.timers.push_back(worker_.accept(self_, p, now, factory));
    } else {
      ++counters_.challenges_ignored;
    }
    return out;
  }
  ++counters_.feedback_ignored;  // SYNACK, ICMP unreachable: no reaction
  return out;
}

HostOutput Attacker::on_timer(const HostTimer& timer, SimTime now, net::PacketFactory& factory) {
  HostOutput out;
  if (timer.kind == HostTimerKind::SolveDone) {
    if (auto resp = worker_.finish(timer.key, now, factory)) out.send.push_back(std::move(*resp));
  }
  return out;
}

}  // namespace pushback::endpoints
