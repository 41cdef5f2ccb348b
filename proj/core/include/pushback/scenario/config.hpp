#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "pushback/defense/router_defense.hpp"
#include "pushback/endpoints/attacker.hpp"
#include "pushback/endpoints/legit_client.hpp"
#include "pushback/endpoints/server.hpp"
#include "pushback/engine/sim_time.hpp"
#include "pushback/net/node.hpp"
#include "pushback/net/packet.hpp"

namespace pushback::scenario {

struct NodeConfig {
  std::string name;
  net::NodeKind kind = net::NodeKind::Router;
  net::HostRole host_role = net::HostRole::Legitimate;
  net::RouterRole router_role = net::RouterRole::Plain;

  double attempt_rate_cps = 2.0;  // legitimate hosts; as written, for echo
  endpoints::LegitParams legit;
  endpoints::AttackerParams attacker;
  endpoints::ServerParams server;
};

struct LinkConfig {
  std::string a;
  std::string b;
  std::uint64_t bandwidth_bps = 10'000'000;
  std::uint64_t delay_ns = 5'000'000;
  std::uint32_t queue_pkts = 50;
};

struct RunConfig {
  SimTime duration = SimTime::seconds(30);
  std::uint64_t seed = 1;
  SimTime sample_interval = SimTime::millis(100);
  net::PacketSizes sizes;
};

struct ScenarioConfig {
  std::vector<NodeConfig> nodes;
  std::vector<LinkConfig> links;
  defense::DefenseParams defense;
  RunConfig run;

  const NodeConfig* find(std::string_view name) const;
  NodeConfig* find(std::string_view name);
};

/// Parses and fully validates a scenario document. Unknown keys are rejected.
/// Throws ConfigError with code config.syntax, config.schema,
/// config.unknown_key or config.semantic.
ScenarioConfig parse_scenario(std::string_view json_text);

/// Reads a file and parses it. Missing or unreadable files raise config.io.
ScenarioConfig load_scenario(const std::filesystem::path& path);

/// Semantic checks: one server, connected graph, consistent roles and ranges.
void validate(const ScenarioConfig& config);

/// The effective configuration as a canonical JSON document (sorted keys, 2-space indent).
std::string to_json(const ScenarioConfig& config);

}  // namespace pushback::scenario
