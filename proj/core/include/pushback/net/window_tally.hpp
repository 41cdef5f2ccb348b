#pragma once

#include <cstdint>
#include <vector>

#include "pushback/engine/node_id.hpp"
#include "pushback/engine/sim_time.hpp"

namespace pushback::net {

struct SourceWindow {
  NodeId src;
  std::uint64_t arrived_bytes = 0;
  std::uint64_t dropped_bytes = 0;
};

/// Per-source byte totals over the trailing window. Sources with no activity are omitted.
struct WindowStats {
  std::vector<SourceWindow> sources;  // ascending by NodeId
  std::uint64_t total_arrived = 0;
  std::uint64_t total_dropped = 0;
};

/// Bucketed per-source arrival/drop accounting for one link direction.
///
/// A window observed at time t covers the `bucket_count` complete buckets
/// preceding the bucket that contains t, i.e. [t - window, t) when t is
/// bucket-aligned.
class WindowTally {
 public:
  WindowTally(std::size_t node_count, SimTime bucket, std::uint32_t bucket_count);

  void record_arrival(NodeId src, std::uint64_t bytes, SimTime now);
  void record_drop(NodeId src, std::uint64_t bytes, SimTime now);

  WindowStats window(SimTime now) const;

  SimTime bucket_width() const { return bucket_; }
  std::uint32_t bucket_count() const { return count_; }

 private:
  struct Bucket {
    std::uint64_t index = ~0ULL;
    std::uint64_t arrived = 0;
    std::uint64_t dropped = 0;
  };

  Bucket& slot(NodeId src, SimTime now);

  SimTime bucket_;
  std::uint32_t count_;
  std::vector<std::vector<Bucket>> rings_;  // per source, lazily sized
};

}  // namespace pushback::net
