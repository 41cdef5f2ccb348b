#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "pushback/engine/node_id.hpp"
#include "pushback/engine/sim_time.hpp"
#include "pushback/net/packet.hpp"

namespace pushback::endpoints {

struct ServerParams {
  std::uint32_t backlog_capacity = 256;
  SimTime half_open_timeout = SimTime::seconds(10);
  SimTime sweep_interval = SimTime::millis(100);
};

struct ServerCounters {
  std::uint64_t syn_received = 0;
  std::uint64_t syn_dropped_backlog_full = 0;
  std::uint64_t established_total = 0;
  std::uint64_t half_open_expired = 0;
  std::uint64_t udp_received = 0;
  std::uint64_t data_absorbed = 0;
  std::uint64_t acks_ignored = 0;
  std::uint64_t unknown_kind = 0;
};

struct ServerResponse {
  std::vector<net::Packet> replies;
  bool backlog_discard = false;  // a SYN was refused because the backlog was full
};

/// The victim: bounded half-open backlog plus the established set.
///
/// An entry whose expiry is <= now no longer exists as far as SYN admission
/// and ACK matching are concerned, even before the periodic sweep removes it.
class ServerConnTable {
 public:
  using ConnKey = std::pair<NodeId, std::uint32_t>;  // (src, flow_tag)

  ServerConnTable(NodeId self, ServerParams params);

  ServerResponse on_packet(const net::Packet& p, SimTime now, net::PacketFactory& factory);

  /// Removes every half-open entry with expiry <= now.
  std::size_t expire_half_open(SimTime now);

  std::size_t half_open_size() const { return half_open_.size(); }
  std::size_t established_size() const { return established_.size(); }
  bool is_half_open(NodeId src, std::uint32_t tag) const { return half_open_.contains({src, tag}); }
  bool is_established(NodeId src, std::uint32_t tag) const { return established_.contains({src, tag}); }
  const ServerCounters& counters() const { return counters_; }
  const ServerParams& params() const { return params_; }
  std::size_t max_half_open_seen() const { return max_half_open_; }

 private:
  void check_invariants() const;

  NodeId self_;
  ServerParams params_;
  std::map<ConnKey, SimTime> half_open_;
  std::set<std::pair<SimTime, ConnKey>> by_expiry_;
  std::set<ConnKey> established_;
  ServerCounters counters_;
  std::size_t max_half_open_ = 0;
};

}  // namespace pushback::endpoints
