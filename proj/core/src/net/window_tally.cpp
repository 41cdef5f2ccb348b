#include "pushback/net/window_tally.hpp"

#include <stdexcept>

namespace pushback::net {

WindowTally::WindowTally(std::size_t node_count, SimTime bucket, std::uint32_t bucket_count)
    : bucket_(bucket), count_(bucket_count), rings_(node_count) {
  if (bucket.ns == 0 || bucket_count == 0) throw std::invalid_argument("window tally needs a non-empty bucket ring");
}

WindowTally::Bucket& WindowTally::slot(NodeId src, SimTime now) {
  auto& ring = rings_.at(src.index);
  // One spare slot so the bucket being filled never evicts the oldest one still in the window.
  if (ring.empty()) ring.resize(count_ + 1);
  const std::uint64_t index = now.ns / bucket_.ns;
  Bucket& b = ring[index % (count_ + 1)];
  if (b.index != index) b = Bucket{index, 0, 0};
  return b;
}

void WindowTally::record_arrival(NodeId src, std::uint64_t bytes, SimTime now) { slot(src, now).arrived += bytes; }

void WindowTally::record_drop(NodeId src, std::uint64_t bytes, SimTime now) { slot(src, now).dropped += bytes; }

WindowStats WindowTally::window(SimTime now) const {
  WindowStats stats;
  const std::uint64_t current = now.ns / bucket_.ns;
  const std::uint64_t oldest = current >= count_ ? current - count_ : 0;
  for (std::uint32_t i = 0; i < rings_.size(); ++i) {
    const auto& ring = rings_[i];
    if (ring.empty()) continue;
    SourceWindow w{NodeId{i}, 0, 0};
    for (const Bucket& b : ring) {
      if (b.index == ~0ULL || b.index < oldest || b.index >= current) continue;
      w.arrived_bytes += b.arrived;
      w.dropped_bytes += b.dropped;
    }
    if (w.arrived_bytes == 0 && w.dropped_bytes == 0) continue;
    stats.total_arrived += w.arrived_bytes;
    stats.total_dropped += w.dropped_bytes;
    stats.sources.push_back(w);
  }
  return stats;
}

}  // namespace pushback::net
