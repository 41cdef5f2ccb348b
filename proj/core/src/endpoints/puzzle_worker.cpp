#include "pushback/endpoints/puzzle_worker.hpp"

#include <algorithm>

#include "pushback/defense/puzzle.hpp"
#include "pushback/engine/error.hpp"

namespace pushback::endpoints {

HostTimer PuzzleWorker::accept(NodeId self, const net::Packet& challenge, SimTime now, net::PacketFactory&) {
  const auto* body = std::get_if<net::ChallengeBody>(&challenge.body);
  if (body == nullptr) throw SimulationFault("puzzle challenge without challenge body");
  const std::uint64_t nonce = defense::solve_minimal(body->challenge_id, body->difficulty_bits);
  const SimTime start = std::max(now, busy_until_);
  busy_until_ = start + per_hash_cost_ * (nonce + 1);
  const std::uint64_t key = next_key_++;
  ready_.emplace(key, Solution{self, challenge.src, body->challenge_id, nonce});
  return HostTimer{busy_until_, HostTimerKind::SolveDone, key};
}

std::optional<net::Packet> PuzzleWorker::finish(std::uint64_t key, SimTime now, net::PacketFactory& factory) {
  auto it = ready_.find(key);
  if (it == ready_.end()) return std::nullopt;
  const Solution s = it->second;
  ready_.erase(it);
  ++solved_;
  return factory.make(net::PacketKind::PuzzleResponse, s.self, s.issuer, 0, now,
                      net::ResponseBody{s.challenge_id, s.nonce});
}

}  // namespace pushback::endpoints
