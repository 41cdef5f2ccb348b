#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "pushback/engine/node_id.hpp"
#include "pushback/engine/ratio.hpp"
#include "pushback/engine/sim_time.hpp"
#include "pushback/net/window_tally.hpp"

namespace pushback::defense {

struct DetectionParams {
  Ratio drop_fraction_threshold{1, 10};
  Ratio suspect_share_threshold{2, 10};
  std::uint64_t min_activity_bytes = 10'000;
  std::uint32_t calm_windows = 3;
};

struct Suspect {
  NodeId src;
  Ratio drop_share;  // source dropped / total dropped
};

enum class SignatureState { Active, Pushed, Resolved };

struct CongestionSignature {
  std::uint32_t sig_id = 0;
  NodeId victim;
  SimTime created_at;
  net::WindowStats window_stats;
  std::vector<Suspect> suspects;  // descending share, ties by lower id
  SignatureState state = SignatureState::Active;
  std::uint32_t below_threshold_windows = 0;
  std::set<NodeId> pushed;  // suspects already pushed upstream
  std::optional<SimTime> last_push;
};

Ratio drop_fraction(const net::WindowStats& stats);

/// Sources whose share of window drops meets the suspect threshold, ranked.
std::vector<Suspect> rank_suspects(const net::WindowStats& stats, Ratio share_threshold);

/// Suspects if the window shows an attack aggregate, nullopt otherwise.
std::optional<std::vector<Suspect>> detect(const net::WindowStats& stats, const DetectionParams& params);

/// Advances the calm-window counter. Returns true when this call resolved the signature.
bool update_signature(CongestionSignature& sig, const net::WindowStats& stats, const DetectionParams& params);

}  // namespace pushback::defense
