#include <doctest.h>

#include <openssl/sha.h>

#include <string>
#include <vector>

#include "pushback/defense/puzzle.hpp"
#include "pushback/defense/sha256.hpp"
#include "pushback/engine/prng.hpp"

using namespace pushback;
using namespace pushback::defense;

namespace {

std::string hex(const Digest256& d) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  for (std::uint8_t b : d) {
    out.push_back(digits[b >> 4]);
    out.push_back(digits[b & 0xF]);
  }
  return out;
}

Digest256 ours(const std::vector<std::uint8_t>& bytes) { return sha256(bytes); }

Digest256 openssl(const std::vector<std::uint8_t>& bytes) {
  Digest256 d{};
  SHA256(bytes.data(), bytes.size(), d.data());
  return d;
}

std::vector<std::uint8_t> bytes_of(const std::string& s) { return {s.begin(), s.end()}; }

}  // namespace

TEST_CASE("sha256 standard vectors") {
  CHECK(hex(ours(bytes_of(""))) == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(hex(ours(bytes_of("abc"))) == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(hex(ours(bytes_of("abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq"))) ==
        "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1");
}

TEST_CASE("sha256 agrees with openssl on every length up to 300 bytes") {
  SplitMix64 rng(11);
  std::vector<std::uint8_t> data;
  for (int len = 0; len <= 300; ++len) {
    REQUIRE(hex(ours(data)) == hex(openssl(data)));
    data.push_back(static_cast<std::uint8_t>(rng.next()));
  }
}

TEST_CASE("incremental updates match one-shot hashing") {
  SplitMix64 rng(12);
  std::vector<std::uint8_t> data(1000);
  for (auto& b : data) b = static_cast<std::uint8_t>(rng.next());
  for (std::size_t split : {0UL, 1UL, 55UL, 56UL, 63UL, 64UL, 65UL, 999UL}) {
    Sha256 h;
    h.update(std::span(data).first(split));
    h.update(std::span(data).subspan(split));
    CHECK(hex(h.finish()) == hex(openssl(data)));
  }
}

TEST_CASE("puzzle preimage is big-endian id then nonce") {
  const auto pre = puzzle_preimage(0x0102030405060708ULL, 0x1112131415161718ULL);
  const std::array<std::uint8_t, 16> want{1, 2, 3, 4, 5, 6, 7, 8, 0x11, 0x12, 0x13, 0x14, 0x15, 0x16, 0x17, 0x18};
  CHECK(pre == want);
  CHECK(hex(sha256(puzzle_preimage(1, 0))) == "783825822a6f9e62da2190e828e4c9d2576e5977e3a0b3620b092dfb9e9996fa");
}
