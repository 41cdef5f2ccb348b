#include "pushback/sim/simulation.hpp"

#include <sstream>

#include "pushback/engine/error.hpp"

namespace pushback::sim {

using net::PacketKind;

std::string RunSummary::line() const {
  std::ostringstream out;
  out << "summary completed=" << completed << " blocked_pkts=" << blocked_pkts << " signatures=" << signatures
      << " puzzles=" << puzzles_issued << '/' << puzzles_solved << '/' << puzzles_failed;
  return out.str();
}

net::Topology build_topology(const scenario::ScenarioConfig& config) {
  std::vector<net::Node> nodes;
  for (const auto& n : config.nodes) {
    net::Node node;
    node.name = n.name;
    node.kind = n.kind;
    node.host_role = n.host_role;
    node.router_role = n.router_role;
    nodes.push_back(std::move(node));
  }
  auto id_of = [&](const std::string& name) {
    for (std::uint32_t i = 0; i < nodes.size(); ++i) {
      if (nodes[i].name == name) return NodeId{i};
    }
    throw ConfigError("config.semantic", "unknown node '" + name + "'");
  };
  std::vector<net::LinkSpec> links;
  for (const auto& l : config.links) {
    links.push_back(net::LinkSpec{id_of(l.a), id_of(l.b), l.bandwidth_bps, SimTime::nanos(l.delay_ns), l.queue_pkts});
  }
  return net::Topology(std::move(nodes), std::move(links));
}

namespace {

endpoints::ServerParams server_params(const scenario::ScenarioConfig& config) {
  for (const auto& n : config.nodes) {
    if (n.kind == net::NodeKind::Server) return n.server;
  }
  throw ConfigError("config.semantic", "scenario has no server");
}

}  // namespace

Simulation::Simulation(scenario::ScenarioConfig config)
    : config_(std::move(config)),
      topo_(build_topology(config_)),
      engine_(config_.run.seed),
      factory_(config_.run.sizes),
      server_(topo_.server(), server_params(config_)),
      metrics_(config_.run.sample_interval) {
  const auto& dp = config_.defense;
  for (const auto& spec : topo_.links()) links_.emplace_back(spec, topo_.node_count(), dp.bucket, dp.bucket_count);

  defense_.resize(topo_.node_count());
  for (std::size_t i = 0; i < topo_.node_count(); ++i) {
    const net::Node& node = topo_.nodes()[i];
    const scenario::NodeConfig& nc = config_.nodes[i];
    if (node.is_router()) {
      defense_[i] = std::make_unique<defense::RouterDefense>(node.id, topo_, dp, engine_.prng());
      if (node.is_intelligent() && dp.enabled) {
        victim_link_[node.id] = topo_.link_between(node.id, topo_.next_hop(node.id, topo_.server()));
        engine_.schedule(dp.bucket, node.id, ObserveWindow{});
      }
    } else if (node.is_attacker()) {
      attackers_.emplace(node.id, endpoints::Attacker(node.id, topo_.server(), nc.attacker));
      if (nc.attacker.start < nc.attacker.stop) engine_.schedule(nc.attacker.start, node.id, SourceTick{});
    } else if (node.is_host()) {
      legit_.emplace(node.id, endpoints::LegitClient(node.id, topo_.server(), nc.legit));
      if (nc.legit.attempt_interval.ns > 0 && nc.legit.start < nc.legit.stop) {
        engine_.schedule(nc.legit.start, node.id, SourceTick{});
      }
    }
  }
  engine_.schedule(server_.params().sweep_interval, topo_.server(), ServerSweep{});
  engine_.schedule(config_.run.sample_interval, topo_.server(), MetricSample{});
}

void Simulation::run() { run_until(config_.run.duration); }

void Simulation::run_until(SimTime t) {
  engine_.run_until(t, [this](Event<Payload>& ev) { dispatch(ev); });
}

void Simulation::dispatch(Event<Payload>& ev) {
  const NodeId target = ev.target;
  std::visit(
      [&](auto& payload) {
        using T = std::decay_t<decltype(payload)>;
        if constexpr (std::is_same_v<T, PacketArrival>) {
          links_.at(payload.link).note_delivered(payload.dir, payload.packet);
          on_arrival(target, payload.packet, net::LinkRef{payload.link, payload.dir});
        } else if constexpr (std::is_same_v<T, TransmitDone>) {
          net::LinkQueue& link = links_.at(payload.link);
          net::Packet p = link.complete_transmit(payload.dir);
          engine_.schedule(now() + link.spec().prop_delay, link.to(payload.dir),
                           PacketArrival{std::move(p), payload.link, payload.dir});
        } else if constexpr (std::is_same_v<T, SourceTick>) {
          on_tick(target);
        } else if constexpr (std::is_same_v<T, HostTimerFired>) {
          if (auto it = legit_.find(target); it != legit_.end()) {
            apply(target, it->second.on_timer(payload.timer, now(), factory_));
          } else if (auto at = attackers_.find(target); at != attackers_.end()) {
            apply(target, at->second.on_timer(payload.timer, now(), factory_));
          }
        } else if constexpr (std::is_same_v<T, ServerSweep>) {
          server_.expire_half_open(now());
          engine_.schedule(now() + server_.params().sweep_interval, target, ServerSweep{});
        } else if constexpr (std::is_same_v<T, ObserveWindow>) {
          on_observe(target);
        } else if constexpr (std::is_same_v<T, PuzzleDeadlineFired>) {
          auto& def = *defense_.at(target.index);
          apply(target, def.on_puzzle_timeout(payload.host, payload.challenge_id, now(), factory_));
        } else if constexpr (std::is_same_v<T, MetricSample>) {
          on_sample();
        }
      },
      ev.payload);
}

void Simulation::on_arrival(NodeId at, const net::Packet& p, net::LinkRef via) {
  const net::Node& node = topo_.node(at);
  if (node.is_router()) {
    on_router_packet(at, p);
    return;
  }
  if (p.dst != at) {
    throw SimulationFault("packet " + std::to_string(p.id) + " for '" + topo_.node(p.dst).name + "' delivered to '" +
                          node.name + "'");
  }
  if (node.is_server()) {
    const net::Node& src = topo_.node(p.src);
    if (src.is_host()) metrics_.note_victim_arrival(src.host_role, p.size_bytes);
    endpoints::ServerResponse resp = server_.on_packet(p, now(), factory_);
    if (resp.backlog_discard) links_.at(via.link).tally(via.dir).record_drop(p.src, p.size_bytes, now());
    for (net::Packet& reply : resp.replies) originate(at, std::move(reply));
    return;
  }
  if (auto it = legit_.find(at); it != legit_.end()) {
    const std::uint64_t before = it->second.counters().completed;
    endpoints::HostOutput out = it->second.on_packet(p, now(), factory_);
    for (std::uint64_t i = before; i < it->second.counters().completed; ++i) metrics_.note_completion();
    apply(at, std::move(out));
  } else if (auto at_it = attackers_.find(at); at_it != attackers_.end()) {
    apply(at, at_it->second.on_packet(p, now(), factory_));
  }
}

void Simulation::on_router_packet(NodeId router, const net::Packet& p) {
  defense::RouterDefense& def = *defense_.at(router.index);
  if (p.dst == router) {
    switch (p.kind) {
      case PacketKind::PushbackRequest: apply(router, def.on_pushback_req(p, now(), factory_)); break;
      case PacketKind::PuzzleResponse: apply(router, def.on_puzzle_resp(p, now(), factory_)); break;
      case PacketKind::BlockRequest: {
        def.on_block_req(p, now());
        note_block(router, std::get<net::BlockBody>(p.body).src);
        break;
      }
      default: break;  // routers terminate nothing else
    }
    return;
  }
  const net::ForwardResult fr = net::forward(topo_, router, p, now(), &def);
  switch (fr.status) {
    case net::ForwardResult::Status::Forwarded: enqueue_on(router, fr.next_hop, p); break;
    case net::ForwardResult::Status::Filtered:
      if (topo_.node(p.src).is_attacker()) ++blocked_attack_pkts_;
      break;
    case net::ForwardResult::Status::RateLimited: metrics_.note_rate_limited(); break;
  }
}

void Simulation::on_tick(NodeId host) {
  if (auto it = legit_.find(host); it != legit_.end()) {
    const auto& params = it->second.params();
    apply(host, it->second.tick(now(), factory_));
    const SimTime next = now() + params.attempt_interval;
    if (next < params.stop) engine_.schedule(next, host, SourceTick{});
    return;
  }
  endpoints::Attacker& att = attackers_.at(host);
  if (auto p = att.tick(now(), factory_)) originate(host, std::move(*p));
  const SimTime next = now() + att.params().period();
  if (next < att.params().stop) engine_.schedule(next, host, SourceTick{});
}

void Simulation::on_observe(NodeId router) {
  const net::LinkRef ref = victim_link_.at(router);
  const net::WindowStats stats = links_.at(ref.link).tally(ref.dir).window(now());
  apply(router, defense_.at(router.index)->on_observe(stats, now(), factory_));
  engine_.schedule(now() + config_.defense.bucket, router, ObserveWindow{});
}

void Simulation::on_sample() {
  metrics_.sample(now(), snapshot());
  engine_.schedule(now() + config_.run.sample_interval, topo_.server(), MetricSample{});
}

metrics::Snapshot Simulation::snapshot() const {
  metrics::Snapshot s;
  s.backlog_occupancy = server_.half_open_size();
  s.difficulty_bits = config_.defense.difficulty.initial_bits;
  bool first = true;
  for (const auto& def : defense_) {
    if (!def) continue;
    s.active_blocks += def->active_blocks(now());
    s.puzzles_issued += def->counters().puzzles_issued;
    s.puzzles_solved += def->counters().puzzles_solved;
    s.puzzles_failed += def->counters().puzzles_failed;
    const std::uint32_t bits = def->difficulty().current_bits();
    s.difficulty_bits = first ? bits : std::max(s.difficulty_bits, bits);
    first = false;
  }
  return s;
}

void Simulation::originate(NodeId from, net::Packet p) {
  const net::Node& node = topo_.node(from);
  if (node.is_host()) metrics_.note_emitted(node.host_role);
  enqueue_on(from, topo_.next_hop(from, p.dst), std::move(p));
}

void Simulation::enqueue_on(NodeId from, NodeId to, net::Packet p) {
  const net::LinkRef ref = topo_.link_between(from, to);
  if (auto done = links_.at(ref.link).enqueue(ref.dir, std::move(p), now())) {
    engine_.schedule(*done, to, TransmitDone{ref.link, ref.dir});
  }
}

void Simulation::apply(NodeId host, endpoints::HostOutput out) {
  for (net::Packet& p : out.send) originate(host, std::move(p));
  for (const endpoints::HostTimer& t : out.timers) engine_.schedule(t.at, host, HostTimerFired{t});
}

void Simulation::apply(NodeId router, defense::DefenseOutput out) {
  for (net::Packet& p : out.send) originate(router, std::move(p));
  for (const defense::PuzzleDeadline& d : out.deadlines) {
    engine_.schedule(d.at, router, PuzzleDeadlineFired{d.host, d.challenge_id});
  }
  for (NodeId src : out.blocks_installed) note_block(router, src);
}

void Simulation::note_block(NodeId router, NodeId src) {
  block_log_.push_back(BlockRecord{src, router, now(), config_.defense.block_ttl});
}

const defense::RouterDefense* Simulation::defense_at(NodeId router) const {
  if (router.index >= defense_.size()) return nullptr;
  return defense_[router.index].get();
}

const endpoints::LegitClient* Simulation::legit(NodeId host) const {
  auto it = legit_.find(host);
  return it == legit_.end() ? nullptr : &it->second;
}

const endpoints::Attacker* Simulation::attacker(NodeId host) const {
  auto it = attackers_.find(host);
  return it == attackers_.end() ? nullptr : &it->second;
}

NodeId Simulation::node(std::string_view name) const {
  auto id = topo_.find(name);
  if (!id) throw std::out_of_range("no node named '" + std::string(name) + "'");
  return *id;
}

RunSummary Simulation::summary() const {
  RunSummary s;
  for (const auto& [id, client] : legit_) s.completed += client.counters().completed;
  s.blocked_pkts = blocked_attack_pkts_;
  for (const auto& def : defense_) {
    if (!def) continue;
    s.signatures += def->counters().signatures_created;
    s.puzzles_issued += def->counters().puzzles_issued;
    s.puzzles_solved += def->counters().puzzles_solved;
    s.puzzles_failed += def->counters().puzzles_failed;
  }
  return s;
}

bool Simulation::queues_conserved() const {
  for (const auto& link : links_) {
    if (!link.conserved(net::Direction::AtoB) || !link.conserved(net::Direction::BtoA)) return false;
  }
  return true;
}

std::vector<std::string> Simulation::filter_violations() const {
  std::map<NodeId, SimTime> first_install;
  for (const BlockRecord& b : block_log_) first_install.emplace(b.src, b.at);

  std::vector<std::string> out;
  for (const auto& [src, since] : first_install) {
    if (now() > since + config_.defense.block_ttl) continue;  // expired; traffic may legitimately resume
    for (std::uint32_t li = 0; li < links_.size(); ++li) {
      for (net::Direction d : {net::Direction::AtoB, net::Direction::BtoA}) {
        const net::LinkQueue& link = links_[li];
        if (link.from(d) == src) continue;  // the host's own access link
        const auto& latest = link.traffic(d, src).latest_data_plane_created;
        if (latest && *latest >= since) {
          out.push_back("'" + topo_.node(src).name + "' blocked at " + std::to_string(since.ns) + "ns but a packet created at " +
                        std::to_string(latest->ns) + "ns crossed " + topo_.node(link.from(d)).name + "->" +
                        topo_.node(link.to(d)).name);
        }
      }
    }
  }
  return out;
}

}  // namespace pushback::sim
