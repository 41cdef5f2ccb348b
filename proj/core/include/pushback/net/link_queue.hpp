#pragma once

#include <array>
#include <cstdint>
#include <deque>
#include <optional>
#include <vector>

#include "pushback/engine/node_id.hpp"
#include "pushback/engine/sim_time.hpp"
#include "pushback/net/packet.hpp"
#include "pushback/net/window_tally.hpp"

namespace pushback::net {

struct LinkSpec {
  NodeId a;
  NodeId b;
  std::uint64_t bandwidth_bps = 10'000'000;
  SimTime prop_delay = SimTime::millis(5);
  std::uint32_t capacity_pkts = 50;
};

enum class Direction : std::uint8_t { AtoB = 0, BtoA = 1 };

struct QueueCounters {
  std::uint64_t arrived = 0;
  std::uint64_t transmitted = 0;
  std::uint64_t dropped = 0;
};

/// Cumulative per-source traffic carried by one link direction.
struct SourceTraffic {
  std::uint64_t tx_packets = 0;
  std::uint64_t tx_bytes = 0;
  std::uint64_t in_flight_bytes = 0;  // transmitted, still propagating
  std::uint64_t dropped_packets = 0;
  std::array<std::uint64_t, 10> dropped_by_kind{};  // indexed by PacketKind
  /// Latest created_at among transmitted packets outside the defense plane.
  std::optional<SimTime> latest_data_plane_created;
};

/// Point-to-point duplex link with a drop-tail FIFO per direction.
///
/// A packet occupies its FIFO slot until serialization completes; propagation
/// happens outside the queue. arrived == transmitted + dropped + fifo length.
class LinkQueue {
 public:
  LinkQueue(LinkSpec spec, std::size_t node_count, SimTime bucket, std::uint32_t bucket_count);

  const LinkSpec& spec() const { return spec_; }
  NodeId from(Direction d) const { return d == Direction::AtoB ? spec_.a : spec_.b; }
  NodeId to(Direction d) const { return d == Direction::AtoB ? spec_.b : spec_.a; }

  SimTime serialization_time(std::uint32_t size_bytes) const;

  /// Drop-tail admission. Returns the transmit completion time, or nullopt on drop.
  std::optional<SimTime> enqueue(Direction d, Packet p, SimTime now);

  /// Pops the head packet whose serialization has finished.
  Packet complete_transmit(Direction d);

  /// The packet reached the far end after propagation.
  void note_delivered(Direction d, const Packet& p);

  const QueueCounters& counters(Direction d) const { return dir(d).counters; }
  std::size_t fifo_length(Direction d) const { return dir(d).fifo.size(); }
  SimTime busy_until(Direction d) const { return dir(d).busy_until; }
  const SourceTraffic& traffic(Direction d, NodeId src) const { return dir(d).traffic.at(src.index); }
  const std::vector<SourceTraffic>& traffic(Direction d) const { return dir(d).traffic; }

  WindowTally& tally(Direction d) { return dir(d).tally; }
  const WindowTally& tally(Direction d) const { return dir(d).tally; }

  bool conserved(Direction d) const;

 private:
  struct PerDirection {
    std::deque<Packet> fifo;
    SimTime busy_until;
    QueueCounters counters;
    std::vector<SourceTraffic> traffic;
    WindowTally tally;
  };

  PerDirection& dir(Direction d) { return dirs_[static_cast<int>(d)]; }
  const PerDirection& dir(Direction d) const { return dirs_[static_cast<int>(d)]; }

  LinkSpec spec_;
  std::array<PerDirection, 2> dirs_;
};

}  // namespace pushback::net
