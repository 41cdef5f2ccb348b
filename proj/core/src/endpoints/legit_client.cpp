#include "pushback/endpoints/legit_client.hpp"

#include <algorithm>

namespace pushback::endpoints {

using net::PacketKind;

LegitClient::LegitClient(NodeId self, NodeId server, LegitParams params)
    : self_(self), server_(server), params_(params), worker_(params.per_hash_cost) {}

HostTimer LegitClient::arm(std::uint32_t tag, Attempt& a, SimTime now) {
  a.timer_at = now + a.rto;
  a.rtos.push_back(a.rto);
  return HostTimer{a.timer_at, HostTimerKind::Retransmit, tag};
}

HostOutput LegitClient::tick(SimTime now, net::PacketFactory& factory) {
  HostOutput out;
  if (params_.attempt_interval.ns == 0 || now < params_.start || now >= params_.stop) return out;
  if (now < cooldown_until_ || worker_.solving(now)) {
    ++counters_.ticks_suppressed;
    return out;
  }
  const std::uint32_t tag = next_tag_++;
  Attempt& a = pending_[tag];
  a.first_sent = now;
  a.rto = params_.initial_rto;
  out.send.push_back(factory.make(PacketKind::Syn, self_, server_, tag, now));
  out.timers.push_back(arm(tag, a, now));
  ++counters_.attempts;
  ++counters_.syn_sent;
  return out;
}

HostOutput LegitClient::on_packet(const net::Packet& p, SimTime now, net::PacketFactory& factory) {
  HostOutput out;
  if (p.kind == PacketKind::SynAck) {
    auto it = pending_.find(p.flow_tag);
    if (it == pending_.end()) return out;  // duplicate SYNACK for a finished attempt
    out.send.push_back(factory.make(PacketKind::Ack, self_, server_, p.flow_tag, now));
    out.send.push_back(factory.make(PacketKind::Data, self_, server_, p.flow_tag, now));
    ++counters_.completed;
    finished_rtos_[p.flow_tag] = std::move(it->second.rtos);
    pending_.erase(it);
  } else if (p.kind == PacketKind::PuzzleChallenge) {
    out.timers.push_back(worker_.accept(self_, p, now, factory));
  }
  return out;
}

HostOutput LegitClient::on_timer(const HostTimer& timer, SimTime now, net::PacketFactory& factory) {
  HostOutput out;
  if (timer.kind == HostTimerKind::SolveDone) {
    if (auto resp = worker_.finish(timer.key, now, factory)) out.send.push_back(std::move(*resp));
    return out;
  }

  const auto tag = static_cast<std::uint32_t>(timer.key);
  auto it = pending_.find(tag);
  if (it == pending_.end() || it->second.timer_at != now) return out;  // answered or superseded
  Attempt& a = it->second;
  if (worker_.solving(now)) {
    // Sends resume once the puzzle is answered.
    a.timer_at = worker_.busy_until();
    out.timers.push_back(HostTimer{a.timer_at, HostTimerKind::Retransmit, tag});
    return out;
  }
  if (a.retries >= params_.max_retries) {
    ++counters_.abandoned;
    cooldown_until_ = now + params_.cooldown;
    finished_rtos_[tag] = std::move(a.rtos);
    pending_.erase(it);
    return out;
  }
  ++a.retries;
  a.rto = std::min(a.rto * 2, params_.max_rto);
  out.send.push_back(factory.make(PacketKind::Syn, self_, server_, tag, now));
  out.timers.push_back(arm(tag, a, now));
  ++counters_.retransmits;
  ++counters_.syn_sent;
  return out;
}

std::vector<SimTime> LegitClient::rto_history(std::uint32_t flow_tag) const {
  if (auto it = pending_.find(flow_tag); it != pending_.end()) return it->second.rtos;
  if (auto it = finished_rtos_.find(flow_tag); it != finished_rtos_.end()) return it->second;
  return {};
}

}  // namespace pushback::endpoints
