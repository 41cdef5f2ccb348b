#pragma once

#include <array>
#include <cstdint>

#include "pushback/defense/sha256.hpp"
#include "pushback/engine/node_id.hpp"
#include "pushback/engine/sim_time.hpp"

namespace pushback::defense {

inline constexpr std::uint32_t kMaxDifficultyBits = 20;

struct PuzzleChallenge {
  std::uint64_t challenge_id = 0;
  std::uint32_t difficulty_bits = 0;
  NodeId issued_to;
  NodeId issued_by;
  SimTime issued_at;
  SimTime deadline;
};

/// big-endian(challenge_id) || big-endian(nonce)
std::array<std::uint8_t, 16> puzzle_preimage(std::uint64_t challenge_id, std::uint64_t nonce);

/// True iff the first `bits` bits of the digest are zero, MSB of byte 0 first.
bool has_leading_zero_bits(const Digest256& digest, std::uint32_t bits);

bool verify_solution(std::uint64_t challenge_id, std::uint32_t difficulty_bits, std::uint64_t nonce);

inline bool verify_solution(const PuzzleChallenge& ch, std::uint64_t nonce) {
  return verify_solution(ch.challenge_id, ch.difficulty_bits, nonce);
}

/// Smallest valid nonce, searching upward from zero. Hashes tried = result + 1.
std::uint64_t solve_minimal(std::uint64_t challenge_id, std::uint32_t difficulty_bits);

}  // namespace pushback::defense
