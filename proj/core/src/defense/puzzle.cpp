#include "pushback/defense/puzzle.hpp"

#include <stdexcept>

namespace pushback::defense {

std::array<std::uint8_t, 16> puzzle_preimage(std::uint64_t challenge_id, std::uint64_t nonce) {
  std::array<std::uint8_t, 16> bytes;
  for (int i = 0; i < 8; ++i) {
    bytes[i] = static_cast<std::uint8_t>(challenge_id >> (56 - 8 * i));
    bytes[8 + i] = static_cast<std::uint8_t>(nonce >> (56 - 8 * i));
  }
  return bytes;
}

bool has_leading_zero_bits(const Digest256& digest, std::uint32_t bits) {
  if (bits > 256) return false;
  const std::uint32_t whole = bits / 8;
  for (std::uint32_t i = 0; i < whole; ++i) {
    if (digest[i] != 0) return false;
  }
  const std::uint32_t rest = bits % 8;
  if (rest == 0) return true;
  const auto mask = static_cast<std::uint8_t>(0xFFU << (8 - rest));
  return (digest[whole] & mask) == 0;
}

bool verify_solution(std::uint64_t challenge_id, std::uint32_t difficulty_bits, std::uint64_t nonce) {
  if (difficulty_bits == 0) return true;
  return has_leading_zero_bits(sha256(puzzle_preimage(challenge_id, nonce)), difficulty_bits);
}

std::uint64_t solve_minimal(std::uint64_t challenge_id, std::uint32_t difficulty_bits) {
  if (difficulty_bits > 64) throw std::invalid_argument("puzzle difficulty above 64 bits is not solvable by search");
  for (std::uint64_t nonce = 0;; ++nonce) {
    if (verify_solution(challenge_id, difficulty_bits, nonce)) return nonce;
  }
}

}  // namespace pushback::defense
