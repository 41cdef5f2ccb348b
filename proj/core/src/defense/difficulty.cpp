#include "pushback/defense/difficulty.hpp"

#include <algorithm>
#include <stdexcept>

namespace pushback::defense {

DifficultyController::DifficultyController(DifficultyParams params) : params_(params), current_(params.initial_bits) {
  if (params_.min_bits > params_.max_bits || current_ < params_.min_bits || current_ > params_.max_bits) {
    throw std::invalid_argument("difficulty bounds must satisfy min <= initial <= max");
  }
  if (params_.history_len == 0) throw std::invalid_argument("difficulty history length must be positive");
}

std::uint32_t DifficultyController::record(PuzzleOutcome outcome, bool congestion_active) {
  history_.push_back(outcome);
  while (history_.size() > params_.history_len) history_.pop_front();
  return adapt(congestion_active);
}

std::uint32_t DifficultyController::adapt(bool congestion_active) {
  if (history_.size() < params_.history_len) return current_;
  const auto solved = static_cast<std::uint64_t>(std::count(history_.begin(), history_.end(), PuzzleOutcome::Solved));
  const Ratio fraction{solved, history_.size()};
  if (congestion_active && fraction >= params_.raise_at) {
    current_ = std::min(current_ + 1, params_.max_bits);
    history_.clear();
  } else if (fraction <= params_.lower_at) {
    current_ = current_ > params_.min_bits ? current_ - 1 : params_.min_bits;
    history_.clear();
  }
  return current_;
}

}  // namespace pushback::defense
