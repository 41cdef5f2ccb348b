#pragma once

#include <sstream>
#include <string>

#include "pushback/metrics/sample.hpp"
#include "pushback/scenario/config.hpp"
#include "pushback/sim/simulation.hpp"

namespace pushback::testing {

inline std::string scenario_path(const std::string& file) { return std::string(PUSHBACK_SCENARIO_DIR) + "/" + file; }

inline scenario::ScenarioConfig load(const std::string& file) { return scenario::load_scenario(scenario_path(file)); }

/// host -- router -- server, all 10 Mbps / 5 ms / 50 packets unless overridden.
inline std::string line_scenario(const std::string& defense = R"({"enabled": false})") {
  return R"({
    "nodes": [
      {"name": "client", "kind": "host", "role": "legitimate"},
      {"name": "r1", "kind": "router", "role": "intelligent"},
      {"name": "victim", "kind": "server"}
    ],
    "links": [
      {"a": "client", "b": "r1"},
      {"a": "r1", "b": "victim"}
    ],
    "defense": )" + defense + R"(,
    "run": {"duration_s": 5, "seed": 3}
  })";
}

/// Silences one attacker by moving its start past any run length.
inline void silence(scenario::ScenarioConfig& config, const std::string& name) {
  config.find(name)->attacker.start = SimTime::max();
}

inline void silence_all_attackers(scenario::ScenarioConfig& config) {
  for (auto& n : config.nodes) {
    if (n.kind == net::NodeKind::Host && n.host_role == net::HostRole::Attacker) n.attacker.start = SimTime::max();
  }
}

inline std::string csv_of(const sim::Simulation& sim) {
  std::ostringstream out;
  metrics::write_csv(sim.metrics().rows(), out);
  return out.str();
}

/// Completed connections per second over (from, to], from the goodput column.
inline double mean_goodput(const std::vector<metrics::SampleRow>& rows, SimTime from, SimTime to) {
  std::uint64_t milli = 0;
  std::uint64_t n = 0;
  for (const auto& r : rows) {
    if (r.time <= from || r.time > to) continue;
    milli += r.goodput_cps.milli;
    ++n;
  }
  return n == 0 ? 0.0 : static_cast<double>(milli) / 1000.0 / static_cast<double>(n);
}

}  // namespace pushback::testing
