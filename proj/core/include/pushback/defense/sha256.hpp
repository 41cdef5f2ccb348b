#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>

namespace pushback::defense {

using Digest256 = std::array<std::uint8_t, 32>;

/// FIPS 180-4 SHA-256, incremental.
class Sha256 {
 public:
  Sha256();
  void update(std::span<const std::uint8_t> data);
  Digest256 finish();

 private:
  void compress(const std::uint8_t* block);

  std::array<std::uint32_t, 8> h_;
  std::array<std::uint8_t, 64> buffer_{};
  std::size_t buffered_ = 0;
  std::uint64_t length_bytes_ = 0;
};

Digest256 sha256(std::span<const std::uint8_t> data);

}  // namespace pushback::defense
