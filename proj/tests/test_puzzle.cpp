#include <doctest.h>

#include <openssl/sha.h>

#include "pushback/defense/puzzle.hpp"
#include "pushback/engine/prng.hpp"

using namespace pushback;
using namespace pushback::defense;

namespace {

// Independent check: OpenSSL digest, leading zeros counted bit by bit.
bool oracle_valid(std::uint64_t id, std::uint32_t bits, std::uint64_t nonce) {
  std::uint8_t msg[16];
  for (int i = 0; i < 8; ++i) {
    msg[i] = static_cast<std::uint8_t>(id >> (56 - 8 * i));
    msg[8 + i] = static_cast<std::uint8_t>(nonce >> (56 - 8 * i));
  }
  std::uint8_t d[32];
  SHA256(msg, sizeof msg, d);
  for (std::uint32_t i = 0; i < bits; ++i) {
    if ((d[i / 8] >> (7 - i % 8)) & 1U) return false;
  }
  return true;
}

std::uint64_t oracle_minimal(std::uint64_t id, std::uint32_t bits) {
  for (std::uint64_t n = 0;; ++n) {
    if (oracle_valid(id, bits, n)) return n;
  }
}

}  // namespace

TEST_CASE("minimal nonces for challenge 1 match the frozen oracle values") {
  // Computed once with Python's hashlib before this code existed.
  CHECK(solve_minimal(1, 0) == 0);
  CHECK(solve_minimal(1, 4) == 10);
  CHECK(solve_minimal(1, 8) == 65);
  CHECK(solve_minimal(1, 12) == 10050);
  CHECK(solve_minimal(1, 16) == 43852);
}

TEST_CASE("verify_solution boundaries") {
  CHECK(verify_solution(1, 0, 0));
  CHECK(verify_solution(1, 0, 12345));
  CHECK(verify_solution(1, 12, 10050));
  CHECK_FALSE(verify_solution(1, 12, 65));
  CHECK_FALSE(verify_solution(1, 12, 10049));
  CHECK(verify_solution(1, 8, 65));
}

TEST_CASE("leading zero bits are counted MSB first") {
  Digest256 d{};
  d[0] = 0x0F;
  CHECK(has_leading_zero_bits(d, 4));
  CHECK_FALSE(has_leading_zero_bits(d, 5));
  d[0] = 0x00;
  d[1] = 0x40;
  CHECK(has_leading_zero_bits(d, 9));
  CHECK_FALSE(has_leading_zero_bits(d, 10));
  CHECK(has_leading_zero_bits(d, 0));
}

TEST_CASE("solver and verifier agree with the independent oracle") {
  SplitMix64 rng(2024);
  for (std::uint32_t bits : {0U, 3U, 7U, 10U}) {
    for (int c = 0; c < 4; ++c) {
      const std::uint64_t id = rng.next();
      const std::uint64_t n = solve_minimal(id, bits);
      REQUIRE(n == oracle_minimal(id, bits));
      for (int k = 0; k < 50; ++k) {
        const std::uint64_t probe = rng.next() % (4 * n + 64);
        REQUIRE(verify_solution(id, bits, probe) == oracle_valid(id, bits, probe));
      }
    }
  }
}
