#include "pushback/defense/signature.hpp"

#include <algorithm>

namespace pushback::defense {

Ratio drop_fraction(const net::WindowStats& stats) {
  if (stats.total_arrived == 0) return Ratio{0, 1};
  return Ratio{stats.total_dropped, stats.total_arrived};
}

std::vector<Suspect> rank_suspects(const net::WindowStats& stats, Ratio share_threshold) {
  std::vector<Suspect> out;
  if (stats.total_dropped == 0) return out;
  for (const auto& s : stats.sources) {
    const Ratio share{s.dropped_bytes, stats.total_dropped};
    if (s.dropped_bytes > 0 && share >= share_threshold) out.push_back({s.src, share});
  }
  std::stable_sort(out.begin(), out.end(), [](const Suspect& a, const Suspect& b) {
    const int c = compare(a.drop_share, b.drop_share);
    return c != 0 ? c > 0 : a.src < b.src;
  });
  return out;
}

std::optional<std::vector<Suspect>> detect(const net::WindowStats& stats, const DetectionParams& params) {
  if (stats.total_arrived < params.min_activity_bytes) return std::nullopt;
  if (drop_fraction(stats) < params.drop_fraction_threshold) return std::nullopt;
  return rank_suspects(stats, params.suspect_share_threshold);
}

bool update_signature(CongestionSignature& sig, const net::WindowStats& stats, const DetectionParams& params) {
  if (sig.state == SignatureState::Resolved) return false;
  if (drop_fraction(stats) < params.drop_fraction_threshold) {
    ++sig.below_threshold_windows;
  } else {
    sig.below_threshold_windows = 0;
  }
  if (sig.below_threshold_windows >= params.calm_windows) {
    sig.state = SignatureState::Resolved;
    return true;
  }
  return false;
}

}  // namespace pushback::defense
