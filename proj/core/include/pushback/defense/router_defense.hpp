#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "pushback/defense/difficulty.hpp"
#include "pushback/defense/puzzle.hpp"
#include "pushback/defense/rate_limit.hpp"
#include "pushback/defense/signature.hpp"
#include "pushback/engine/node_id.hpp"
#include "pushback/engine/prng.hpp"
#include "pushback/engine/ratio.hpp"
#include "pushback/engine/sim_time.hpp"
#include "pushback/net/forward.hpp"
#include "pushback/net/packet.hpp"
#include "pushback/net/topology.hpp"
#include "pushback/net/window_tally.hpp"

namespace pushback::defense {

struct DefenseParams {
  bool enabled = true;
  SimTime bucket = SimTime::millis(100);
  std::uint32_t bucket_count = 10;
  DetectionParams detection;
  SimTime puzzle_timeout = SimTime::seconds(2);
  SimTime whitelist_ttl = SimTime::seconds(60);
  SimTime block_ttl = SimTime::seconds(60);
  Ratio admit_fraction{1, 10};
  /// A standing signature re-sends its suspects upstream at most this often.
  SimTime repush_interval = SimTime::seconds(1);
  /// A router counts as congested this long after its last pushback request.
  SimTime congestion_hold = SimTime::seconds(2);
  DifficultyParams difficulty;
};

struct BlockEntry {
  NodeId src;
  SimTime installed_at;
  SimTime ttl;

  bool active(SimTime now) const { return now <= installed_at + ttl; }
};

struct DefenseCounters {
  std::uint64_t signatures_created = 0;
  std::uint64_t pushback_sent = 0;
  std::uint64_t pushback_received = 0;
  std::uint64_t puzzles_issued = 0;
  std::uint64_t puzzles_solved = 0;
  std::uint64_t puzzles_failed = 0;
  std::uint64_t blocks_requested = 0;
  std::uint64_t blocks_installed = 0;
  std::uint64_t filtered_pkts = 0;
  std::uint64_t rate_limited_pkts = 0;
  std::uint64_t unreachable_suspects = 0;
  std::uint64_t repeat_suspects = 0;  // already challenged, whitelisted or confirmed
  std::uint64_t stray_responses = 0;
};

struct PuzzleDeadline {
  SimTime at;
  NodeId host;
  std::uint64_t challenge_id = 0;
};

struct DefenseOutput {
  std::vector<net::Packet> send;
  std::vector<PuzzleDeadline> deadlines;
  std::vector<NodeId> blocks_installed;  // installed on this router during the call
};

/// Defense state and behavior of one router.
///
/// Every router can issue puzzles when asked by a downstream pushback
/// request and can enforce blocks. Only intelligent routers observe the
/// victim-facing link and build congestion signatures.
class RouterDefense : public net::PacketFilter {
 public:
  RouterDefense(NodeId self, const net::Topology& topo, DefenseParams params, SplitMix64& prng);

  /// Block check, then rate limiting. Defense-plane packets always pass.
  net::FilterVerdict inspect(const net::Packet& p, SimTime now) override;

  /// One observation of the victim-facing link window: update, detect, push back.
  DefenseOutput on_observe(const net::WindowStats& stats, SimTime now, net::PacketFactory& factory);

  /// Pushes the current ACTIVE signature's suspects upstream.
  DefenseOutput initiate_pushback(SimTime now, net::PacketFactory& factory);

  DefenseOutput on_pushback_req(const net::Packet& p, SimTime now, net::PacketFactory& factory);
  DefenseOutput on_puzzle_resp(const net::Packet& p, SimTime now, net::PacketFactory& factory);
  DefenseOutput on_puzzle_timeout(NodeId host, std::uint64_t challenge_id, SimTime now, net::PacketFactory& factory);
  void on_block_req(const net::Packet& p, SimTime now);

  void install_block(NodeId src, SimTime ttl, SimTime now);

  NodeId self() const { return self_; }
  NodeId victim() const { return victim_; }
  bool is_blocked(NodeId src, SimTime now) const;
  std::size_t active_blocks(SimTime now) const;
  bool is_whitelisted(NodeId src, SimTime now) const;
  bool is_confirmed(NodeId src, SimTime now) const;
  const RateLimitEntry* rate_limit(NodeId src) const;
  std::size_t rate_limit_count() const { return rate_limits_.size(); }
  std::optional<PuzzleChallenge> outstanding(NodeId host) const;
  const CongestionSignature* current_signature() const;
  const std::vector<CongestionSignature>& signatures() const { return signatures_; }
  const DifficultyController& difficulty() const { return difficulty_; }
  const DefenseCounters& counters() const { return counters_; }
  const DefenseParams& params() const { return params_; }
  bool congestion_active(SimTime now) const;

 private:
  CongestionSignature* live_signature();
  void challenge(const std::vector<NodeId>& suspects, SimTime now, net::PacketFactory& factory, DefenseOutput& out);
  void validate(NodeId host, SimTime now);
  void confirm(NodeId host, SimTime now, net::PacketFactory& factory, DefenseOutput& out);
  void ensure_rate_limit(NodeId src, SimTime now);

  NodeId self_;
  const net::Topology& topo_;
  DefenseParams params_;
  SplitMix64& prng_;
  NodeId victim_;

  std::map<NodeId, BlockEntry> blocks_;
  std::map<NodeId, RateLimitEntry> rate_limits_;
  std::map<NodeId, SimTime> whitelist_;  // host -> expiry
  std::map<NodeId, SimTime> confirmed_;  // host -> expiry
  std::map<NodeId, PuzzleChallenge> outstanding_;
  DifficultyController difficulty_;
  std::optional<SimTime> last_pushback_rx_;

  std::vector<CongestionSignature> signatures_;  // the last one may be live
  std::set<NodeId> signature_limited_;           // rate limits owned by the live signature
  std::uint32_t next_sig_id_ = 1;
  DefenseCounters counters_;
};

}  // namespace pushback::defense
