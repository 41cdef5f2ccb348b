#pragma once

#include <cstdint>
#include <string_view>
#include <variant>
#include <vector>

#include "pushback/engine/node_id.hpp"
#include "pushback/engine/sim_time.hpp"

namespace pushback::net {

enum class PacketKind : std::uint8_t {
  Syn,
  SynAck,
  Ack,
  Data,
  Udp,
  IcmpUnreach,
  PuzzleChallenge,
  PuzzleResponse,
  PushbackRequest,
  BlockRequest,
};

std::string_view to_string(PacketKind kind);

/// Puzzle, pushback and block traffic. Never filtered by blocks or rate limits.
constexpr bool is_defense_plane(PacketKind kind) {
  return kind == PacketKind::PuzzleChallenge || kind == PacketKind::PuzzleResponse ||
         kind == PacketKind::PushbackRequest || kind == PacketKind::BlockRequest;
}

struct ChallengeBody {
  std::uint64_t challenge_id = 0;
  std::uint32_t difficulty_bits = 0;
  SimTime issued_at;
  SimTime deadline;
};

struct ResponseBody {
  std::uint64_t challenge_id = 0;
  std::uint64_t nonce = 0;
};

struct PushbackBody {
  std::uint32_t sig_id = 0;
  NodeId victim;
  std::vector<NodeId> suspects;
};

struct BlockBody {
  NodeId src;
  SimTime ttl;
};

using PacketBody = std::variant<std::monostate, ChallengeBody, ResponseBody, PushbackBody, BlockBody>;

struct Packet {
  std::uint64_t id = 0;
  NodeId src;
  NodeId dst;
  PacketKind kind = PacketKind::Syn;
  std::uint32_t size_bytes = 40;
  std::uint32_t flow_tag = 0;
  SimTime created_at;
  PacketBody body;
};

/// size >= 40, src != dst, and the body variant matches the kind.
bool well_formed(const Packet& p);

struct PacketSizes {
  std::uint32_t control_bytes = 40;
  std::uint32_t data_bytes = 512;
};

/// Allocates run-unique packet ids and applies the configured sizes.
class PacketFactory {
 public:
  explicit PacketFactory(PacketSizes sizes = {}) : sizes_(sizes) {}

  Packet make(PacketKind kind, NodeId src, NodeId dst, std::uint32_t flow_tag, SimTime now,
              PacketBody body = {});

  std::uint64_t issued() const { return next_id_ - 1; }
  const PacketSizes& sizes() const { return sizes_; }

 private:
  PacketSizes sizes_;
  std::uint64_t next_id_ = 1;
};

}  // namespace pushback::net
