#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pushback/defense/router_defense.hpp"
#include "pushback/endpoints/attacker.hpp"
#include "pushback/endpoints/legit_client.hpp"
#include "pushback/endpoints/server.hpp"
#include "pushback/engine/engine.hpp"
#include "pushback/metrics/sample.hpp"
#include "pushback/net/link_queue.hpp"
#include "pushback/net/topology.hpp"
#include "pushback/scenario/config.hpp"

namespace pushback::sim {

struct PacketArrival {
  net::Packet packet;
  std::uint32_t link = 0;
  net::Direction dir = net::Direction::AtoB;
};
struct TransmitDone {
  std::uint32_t link = 0;
  net::Direction dir = net::Direction::AtoB;
};
struct SourceTick {};
struct HostTimerFired {
  endpoints::HostTimer timer;
};
struct ServerSweep {};
struct ObserveWindow {};
struct PuzzleDeadlineFired {
  NodeId host;
  std::uint64_t challenge_id = 0;
};
struct MetricSample {};

using Payload = std::variant<PacketArrival, TransmitDone, SourceTick, HostTimerFired, ServerSweep, ObserveWindow,
                             PuzzleDeadlineFired, MetricSample>;

struct BlockRecord {
  NodeId src;
  NodeId router;
  SimTime at;
  SimTime ttl;
};

struct RunSummary {
  std::uint64_t completed = 0;
  std::uint64_t blocked_pkts = 0;  // attacker packets discarded by block filters
  std::uint64_t signatures = 0;
  std::uint64_t puzzles_issued = 0;
  std::uint64_t puzzles_solved = 0;
  std::uint64_t puzzles_failed = 0;

  std::string line() const;
};

/// One scenario run: topology, endpoints, per-router defense and the event loop.
///
/// Not copyable or movable; components hold references into it.
class Simulation {
 public:
  explicit Simulation(scenario::ScenarioConfig config);
  Simulation(const Simulation&) = delete;
  Simulation& operator=(const Simulation&) = delete;

  /// Runs to the configured duration.
  void run();
  /// Runs up to `t` (inclusive). May be called repeatedly with increasing times.
  void run_until(SimTime t);

  SimTime now() const { return engine_.now(); }
  const scenario::ScenarioConfig& config() const { return config_; }
  const net::Topology& topology() const { return topo_; }
  const std::vector<net::LinkQueue>& links() const { return links_; }
  const endpoints::ServerConnTable& server() const { return server_; }
  const defense::RouterDefense* defense_at(NodeId router) const;
  const endpoints::LegitClient* legit(NodeId host) const;
  const endpoints::Attacker* attacker(NodeId host) const;
  const metrics::MetricsCollector& metrics() const { return metrics_; }
  const std::vector<BlockRecord>& block_log() const { return block_log_; }
  NodeId node(std::string_view name) const;

  RunSummary summary() const;
  std::uint64_t event_digest() const { return engine_.digest(); }
  std::uint64_t events_processed() const { return engine_.processed(); }

  /// Every link direction satisfies arrived == transmitted + dropped + queued.
  bool queues_conserved() const;

  /// Descriptions of blocked sources whose packets, created after the block
  /// went in, were carried past their edge router. Only blocks still active
  /// at the end of the run are checked.
  std::vector<std::string> filter_violations() const;

 private:
  void dispatch(Event<Payload>& ev);
  void on_arrival(NodeId at, const net::Packet& p, net::LinkRef via);
  void on_router_packet(NodeId router, const net::Packet& p);
  void on_tick(NodeId host);
  void on_observe(NodeId router);
  void on_sample();

  void originate(NodeId from, net::Packet p);
  void enqueue_on(NodeId from, NodeId to, net::Packet p);
  void apply(NodeId host, endpoints::HostOutput out);
  void apply(NodeId router, defense::DefenseOutput out);
  void note_block(NodeId router, NodeId src);

  metrics::Snapshot snapshot() const;

  scenario::ScenarioConfig config_;
  net::Topology topo_;
  Engine<Payload> engine_;
  net::PacketFactory factory_;
  std::vector<net::LinkQueue> links_;
  endpoints::ServerConnTable server_;
  std::map<NodeId, endpoints::LegitClient> legit_;
  std::map<NodeId, endpoints::Attacker> attackers_;
  std::vector<std::unique_ptr<defense::RouterDefense>> defense_;  // indexed by node; null for non-routers
  std::map<NodeId, net::LinkRef> victim_link_;                     // intelligent router -> link toward the server
  metrics::MetricsCollector metrics_;
  std::vector<BlockRecord> block_log_;
  std::uint64_t blocked_attack_pkts_ = 0;
};

/// Builds the topology described by a scenario. Exposed for tools and tests.
net::Topology build_topology(const scenario::ScenarioConfig& config);

}  // namespace pushback::sim
