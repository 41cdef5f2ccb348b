#include "pushback/net/link_queue.hpp"

#include <algorithm>

#include "pushback/engine/error.hpp"

namespace pushback::net {

LinkQueue::LinkQueue(LinkSpec spec, std::size_t node_count, SimTime bucket, std::uint32_t bucket_count)
    : spec_(spec),
      dirs_{PerDirection{{}, {}, {}, std::vector<SourceTraffic>(node_count), WindowTally(node_count, bucket, bucket_count)},
            PerDirection{{}, {}, {}, std::vector<SourceTraffic>(node_count), WindowTally(node_count, bucket, bucket_count)}} {
  if (spec_.bandwidth_bps == 0) throw SimulationFault("link with zero bandwidth");
}

SimTime LinkQueue::serialization_time(std::uint32_t size_bytes) const {
  const auto bits_ns = static_cast<unsigned __int128>(size_bytes) * 8U * 1'000'000'000ULL;
  return SimTime{static_cast<std::uint64_t>(bits_ns / spec_.bandwidth_bps)};
}

std::optional<SimTime> LinkQueue::enqueue(Direction d, Packet p, SimTime now) {
  PerDirection& q = dir(d);
  ++q.counters.arrived;
  q.tally.record_arrival(p.src, p.size_bytes, now);
  if (q.fifo.size() >= spec_.capacity_pkts) {
    ++q.counters.dropped;
    auto& t = q.traffic.at(p.src.index);
    ++t.dropped_packets;
    ++t.dropped_by_kind.at(static_cast<std::size_t>(p.kind));
    q.tally.record_drop(p.src, p.size_bytes, now);
    return std::nullopt;
  }
  const SimTime start = std::max(now, q.busy_until);
  q.busy_until = start + serialization_time(p.size_bytes);
  q.fifo.push_back(std::move(p));
  return q.busy_until;
}

Packet LinkQueue::complete_transmit(Direction d) {
  PerDirection& q = dir(d);
  if (q.fifo.empty()) throw SimulationFault("transmit completion on an empty link queue");
  Packet p = std::move(q.fifo.front());
  q.fifo.pop_front();
  ++q.counters.transmitted;
  auto& t = q.traffic.at(p.src.index);
  ++t.tx_packets;
  t.tx_bytes += p.size_bytes;
  t.in_flight_bytes += p.size_bytes;
  if (!is_defense_plane(p.kind) &&
      (!t.latest_data_plane_created || *t.latest_data_plane_created < p.created_at)) {
    t.latest_data_plane_created = p.created_at;
  }
  return p;
}

void LinkQueue::note_delivered(Direction d, const Packet& p) {
  auto& t = dir(d).traffic.at(p.src.index);
  t.in_flight_bytes -= p.size_bytes;
}

bool LinkQueue::conserved(Direction d) const {
  const PerDirection& q = dir(d);
  return q.counters.arrived == q.counters.transmitted + q.counters.dropped + q.fifo.size();
}

}  // namespace pushback::net
