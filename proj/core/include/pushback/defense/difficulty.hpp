#pragma once

#include <cstdint>
#include <deque>

#include "pushback/engine/ratio.hpp"

namespace pushback::defense {

enum class PuzzleOutcome { Solved, Failed };

struct DifficultyParams {
  std::uint32_t initial_bits = 8;
  std::uint32_t min_bits = 0;
  std::uint32_t max_bits = 20;
  std::uint32_t history_len = 20;
  Ratio raise_at{9, 10};  // solved fraction >= raise_at under congestion: +1 bit
  Ratio lower_at{1, 10};  // solved fraction <= lower_at: -1 bit
};

/// Adaptive puzzle difficulty driven by the last `history_len` outcomes.
class DifficultyController {
 public:
  explicit DifficultyController(DifficultyParams params = {});

  /// Records one outcome, then adapts. Returns the new difficulty.
  std::uint32_t record(PuzzleOutcome outcome, bool congestion_active);

  /// Applies the adaptation rule to the current history without recording.
  std::uint32_t adapt(bool congestion_active);

  std::uint32_t current_bits() const { return current_; }
  const std::deque<PuzzleOutcome>& history() const { return history_; }
  const DifficultyParams& params() const { return params_; }

 private:
  DifficultyParams params_;
  std::uint32_t current_;
  std::deque<PuzzleOutcome> history_;
};

}  // namespace pushback::defense
