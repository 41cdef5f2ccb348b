#include "pushback/defense/router_defense.hpp"

#include <algorithm>

#include "pushback/engine/error.hpp"

namespace pushback::defense {

using net::PacketKind;

RouterDefense::RouterDefense(NodeId self, const net::Topology& topo, DefenseParams params, SplitMix64& prng)
    : self_(self), topo_(topo), params_(params), prng_(prng), victim_(topo.server()), difficulty_(params.difficulty) {}

net::FilterVerdict RouterDefense::inspect(const net::Packet& p, SimTime now) {
  if (net::is_defense_plane(p.kind)) return net::FilterVerdict::Pass;
  if (is_blocked(p.src, now)) {
    ++counters_.filtered_pkts;
    return net::FilterVerdict::Blocked;
  }
  auto it = rate_limits_.find(p.src);
  if (it != rate_limits_.end() && p.dst == it->second.victim() && !is_whitelisted(p.src, now)) {
    if (rate_limit_admit(it->second, prng_) == Admission::Drop) {
      ++counters_.rate_limited_pkts;
      return net::FilterVerdict::RateLimited;
    }
  }
  return net::FilterVerdict::Pass;
}

CongestionSignature* RouterDefense::live_signature() {
  if (signatures_.empty() || signatures_.back().state == SignatureState::Resolved) return nullptr;
  return &signatures_.back();
}

const CongestionSignature* RouterDefense::current_signature() const {
  if (signatures_.empty() || signatures_.back().state == SignatureState::Resolved) return nullptr;
  return &signatures_.back();
}

DefenseOutput RouterDefense::on_observe(const net::WindowStats& stats, SimTime now, net::PacketFactory& factory) {
  DefenseOutput out;
  if (!params_.enabled) return out;

  if (CongestionSignature* sig = live_signature()) {
    sig->window_stats = stats;
    if (update_signature(*sig, stats, params_.detection)) {
      for (NodeId src : signature_limited_) rate_limits_.erase(src);
      signature_limited_.clear();
    }
  }

  auto suspects = detect(stats, params_.detection);
  if (!suspects) return out;

  CongestionSignature* sig = live_signature();
  if (sig == nullptr) {
    CongestionSignature fresh;
    fresh.sig_id = next_sig_id_++;
    fresh.victim = victim_;
    fresh.created_at = now;
    signatures_.push_back(std::move(fresh));
    sig = &signatures_.back();
    ++counters_.signatures_created;
  }
  sig->window_stats = stats;
  sig->suspects = std::move(*suspects);
  if (sig->state == SignatureState::Pushed) {
    const bool new_suspect = std::any_of(sig->suspects.begin(), sig->suspects.end(),
                                         [&](const Suspect& s) { return !sig->pushed.contains(s.src); });
    const bool stale = !sig->last_push || now >= *sig->last_push + params_.repush_interval;
    if (new_suspect || stale) sig->state = SignatureState::Active;
  }
  if (sig->state == SignatureState::Active) return initiate_pushback(now, factory);
  return out;
}

DefenseOutput RouterDefense::initiate_pushback(SimTime now, net::PacketFactory& factory) {
  DefenseOutput out;
  CongestionSignature* sig = live_signature();
  if (sig == nullptr || sig->state != SignatureState::Active) return out;

  std::map<NodeId, std::vector<NodeId>> by_upstream;
  std::vector<NodeId> local;
  for (const Suspect& s : sig->suspects) {
    const NodeId src = s.src;
    if (src == self_ || !topo_.node(src).is_host()) {
      ++counters_.unreachable_suspects;
      continue;
    }
    if (is_whitelisted(src, now) || is_confirmed(src, now)) continue;
    ensure_rate_limit(src, now);
    signature_limited_.insert(src);
    const NodeId upstream = topo_.next_hop(self_, src);
    if (upstream == src) {
      local.push_back(src);  // directly attached: nobody further upstream to ask
    } else {
      by_upstream[upstream].push_back(src);
    }
    sig->pushed.insert(src);
  }

  for (auto& [upstream, suspects] : by_upstream) {
    out.send.push_back(factory.make(PacketKind::PushbackRequest, self_, upstream, 0, now,
                                    net::PushbackBody{sig->sig_id, sig->victim, std::move(suspects)}));
    ++counters_.pushback_sent;
  }
  if (!local.empty()) challenge(local, now, factory, out);

  sig->state = SignatureState::Pushed;
  sig->last_push = now;
  return out;
}

DefenseOutput RouterDefense::on_pushback_req(const net::Packet& p, SimTime now, net::PacketFactory& factory) {
  DefenseOutput out;
  const auto* body = std::get_if<net::PushbackBody>(&p.body);
  if (body == nullptr) throw SimulationFault("pushback request without body");
  ++counters_.pushback_received;
  last_pushback_rx_ = now;
  challenge(body->suspects, now, factory, out);
  return out;
}

void RouterDefense::challenge(const std::vector<NodeId>& suspects, SimTime now, net::PacketFactory& factory,
                              DefenseOutput& out) {
  for (NodeId host : suspects) {
    if (!host.valid() || host.index >= topo_.node_count() || !topo_.node(host).is_host()) {
      ++counters_.unreachable_suspects;
      continue;
    }
    if (is_whitelisted(host, now) || outstanding_.contains(host) || is_confirmed(host, now)) {
      ++counters_.repeat_suspects;
      continue;
    }
    PuzzleChallenge ch;
    ch.challenge_id = prng_.next();
    ch.difficulty_bits = difficulty_.current_bits();
    ch.issued_to = host;
    ch.issued_by = self_;
    ch.issued_at = now;
    ch.deadline = now + params_.puzzle_timeout;
    outstanding_.emplace(host, ch);
    out.send.push_back(factory.make(PacketKind::PuzzleChallenge, self_, host, 0, now,
                                    net::ChallengeBody{ch.challenge_id, ch.difficulty_bits, ch.issued_at, ch.deadline}));
    out.deadlines.push_back(PuzzleDeadline{ch.deadline, host, ch.challenge_id});
    ++counters_.puzzles_issued;
    ensure_rate_limit(host, now);
  }
}

DefenseOutput RouterDefense::on_puzzle_resp(const net::Packet& p, SimTime now, net::PacketFactory& factory) {
  DefenseOutput out;
  const auto* body = std::get_if<net::ResponseBody>(&p.body);
  if (body == nullptr) throw SimulationFault("puzzle response without body");
  auto it = outstanding_.find(p.src);
  if (it == outstanding_.end() || it->second.challenge_id != body->challenge_id) {
    ++counters_.stray_responses;  // late, duplicate or for another router
    return out;
  }
  const PuzzleChallenge ch = it->second;
  if (now < ch.deadline && verify_solution(ch, body->nonce)) {
    validate(p.src, now);
  } else {
    confirm(p.src, now, factory, out);
  }
  return out;
}

DefenseOutput RouterDefense::on_puzzle_timeout(NodeId host, std::uint64_t challenge_id, SimTime now,
                                               net::PacketFactory& factory) {
  DefenseOutput out;
  auto it = outstanding_.find(host);
  if (it == outstanding_.end() || it->second.challenge_id != challenge_id) return out;
  confirm(host, now, factory, out);
  return out;
}

void RouterDefense::validate(NodeId host, SimTime now) {
  outstanding_.erase(host);
  whitelist_[host] = now + params_.whitelist_ttl;
  rate_limits_.erase(host);
  signature_limited_.erase(host);
  ++counters_.puzzles_solved;
  difficulty_.record(PuzzleOutcome::Solved, congestion_active(now));
}

void RouterDefense::confirm(NodeId host, SimTime now, net::PacketFactory& factory, DefenseOutput& out) {
  outstanding_.erase(host);
  rate_limits_.erase(host);
  signature_limited_.erase(host);
  confirmed_[host] = now + params_.block_ttl;
  ++counters_.puzzles_failed;
  difficulty_.record(PuzzleOutcome::Failed, congestion_active(now));
  if (CongestionSignature* sig = live_signature()) {
    std::erase_if(sig->suspects, [&](const Suspect& s) { return s.src == host; });
  }
  const NodeId edge = topo_.edge_router(host);
  if (edge == self_) {
    install_block(host, params_.block_ttl, now);
    out.blocks_installed.push_back(host);
  } else {
    out.send.push_back(factory.make(PacketKind::BlockRequest, self_, edge, 0, now,
                                    net::BlockBody{host, params_.block_ttl}));
  }
  ++counters_.blocks_requested;
}

void RouterDefense::on_block_req(const net::Packet& p, SimTime now) {
  const auto* body = std::get_if<net::BlockBody>(&p.body);
  if (body == nullptr) throw SimulationFault("block request without body");
  install_block(body->src, body->ttl, now);
}

void RouterDefense::install_block(NodeId src, SimTime ttl, SimTime now) {
  blocks_.insert_or_assign(src, BlockEntry{src, now, ttl});
  rate_limits_.erase(src);
  signature_limited_.erase(src);
  ++counters_.blocks_installed;
}

void RouterDefense::ensure_rate_limit(NodeId src, SimTime now) {
  if (rate_limits_.contains(src)) return;
  rate_limits_.emplace(src, RateLimitEntry(src, victim_, params_.admit_fraction, now));
}

bool RouterDefense::is_blocked(NodeId src, SimTime now) const {
  auto it = blocks_.find(src);
  return it != blocks_.end() && it->second.active(now);
}

std::size_t RouterDefense::active_blocks(SimTime now) const {
  return static_cast<std::size_t>(
      std::count_if(blocks_.begin(), blocks_.end(), [&](const auto& kv) { return kv.second.active(now); }));
}

bool RouterDefense::is_whitelisted(NodeId src, SimTime now) const {
  auto it = whitelist_.find(src);
  return it != whitelist_.end() && now < it->second;
}

bool RouterDefense::is_confirmed(NodeId src, SimTime now) const {
  auto it = confirmed_.find(src);
  return it != confirmed_.end() && now < it->second;
}

const RateLimitEntry* RouterDefense::rate_limit(NodeId src) const {
  auto it = rate_limits_.find(src);
  return it == rate_limits_.end() ? nullptr : &it->second;
}

std::optional<PuzzleChallenge> RouterDefense::outstanding(NodeId host) const {
  auto it = outstanding_.find(host);
  if (it == outstanding_.end()) return std::nullopt;
  return it->second;
}

bool RouterDefense::congestion_active(SimTime now) const {
  if (last_pushback_rx_ && now <= *last_pushback_rx_ + params_.congestion_hold) return true;
  return current_signature() != nullptr;
}

}  // namespace pushback::defense
