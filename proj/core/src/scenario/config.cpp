#include "pushback/scenario/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <optional>
#include <set>
#include <sstream>

#include <json.hpp>

#include "pushback/engine/error.hpp"
#include "pushback/net/topology.hpp"

namespace pushback::scenario {

using json = nlohmann::json;

namespace {

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
  throw ConfigError("config.schema", path + ": " + what);
}

[[noreturn]] void semantic_error(const std::string& what) { throw ConfigError("config.semantic", what); }

/// Strict view over one JSON object: every key must be consumed before finish().
class ObjectReader {
 public:
  ObjectReader(const json& value, std::string path) : value_(value), path_(std::move(path)) {
    if (!value_.is_object()) schema_error(path_, "expected an object");
  }

  bool has(const std::string& key) const { return value_.contains(key); }

  const json* take(const std::string& key) {
    consumed_.insert(key);
    auto it = value_.find(key);
    if (it == value_.end() || it->is_null()) return nullptr;
    return &*it;
  }

  std::string string(const std::string& key, std::optional<std::string> fallback = std::nullopt) {
    const json* v = take(key);
    if (v == nullptr) {
      if (!fallback) schema_error(at(key), "required string is missing");
      return *fallback;
    }
    if (!v->is_string()) schema_error(at(key), "expected a string");
    return v->get<std::string>();
  }

  std::uint64_t unsigned_int(const std::string& key, std::uint64_t fallback) {
    const json* v = take(key);
    if (v == nullptr) return fallback;
    if (v->is_number_unsigned()) return v->get<std::uint64_t>();
    if (v->is_number_integer() && v->get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(v->get<std::int64_t>());
    if (v->is_number_float()) {
      const double d = v->get<double>();
      if (d >= 0 && d == std::floor(d) && d < 1.8e19) return static_cast<std::uint64_t>(d);
    }
    schema_error(at(key), "expected a non-negative integer");
  }

  std::optional<std::uint64_t> optional_unsigned(const std::string& key) {
    if (!has(key) || value_.at(key).is_null()) {
      consumed_.insert(key);
      return std::nullopt;
    }
    return unsigned_int(key, 0);
  }

  double number(const std::string& key, double fallback) {
    const json* v = take(key);
    if (v == nullptr) return fallback;
    if (!v->is_number()) schema_error(at(key), "expected a number");
    const double d = v->get<double>();
    if (!std::isfinite(d)) schema_error(at(key), "expected a finite number");
    return d;
  }

  bool boolean(const std::string& key, bool fallback) {
    const json* v = take(key);
    if (v == nullptr) return fallback;
    if (!v->is_boolean()) schema_error(at(key), "expected true or false");
    return v->get<bool>();
  }

  void finish() const {
    for (auto it = value_.begin(); it != value_.end(); ++it) {
      if (!consumed_.contains(it.key())) throw ConfigError("config.unknown_key", at(it.key()) + ": unknown key");
    }
  }

  std::string at(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

 private:
  const json& value_;
  std::string path_;
  std::set<std::string> consumed_;
};

Ratio fraction(ObjectReader& r, const std::string& key, Ratio fallback) {
  const double d = r.number(key, fallback.to_double());
  if (d < 0.0 || d > 1.0) schema_error(r.at(key), "expected a fraction in [0, 1]");
  return Ratio::from_decimal(d);
}

SimTime millis(ObjectReader& r, const std::string& key, SimTime fallback) {
  return SimTime::millis(r.unsigned_int(key, fallback.ns / 1'000'000ULL));
}

SimTime stop_time(ObjectReader& r, const std::string& key) {
  const auto ms = r.optional_unsigned(key);
  return ms ? SimTime::millis(*ms) : SimTime::max();
}

SimTime per_hash(ObjectReader& r) { return SimTime::nanos(r.unsigned_int("per_hash_ns", 1000)); }

NodeConfig parse_node(const json& value, const std::string& path) {
  ObjectReader r(value, path);
  NodeConfig n;
  n.name = r.string("name");
  if (n.name.empty()) schema_error(r.at("name"), "node name must not be empty");
  const std::string kind = r.string("kind");
  if (kind == "host") {
    n.kind = net::NodeKind::Host;
    const std::string role = r.string("role", std::string("legitimate"));
    if (role == "legitimate") {
      n.host_role = net::HostRole::Legitimate;
      n.attempt_rate_cps = r.number("attempt_rate_cps", 2.0);
      if (n.attempt_rate_cps < 0) schema_error(r.at("attempt_rate_cps"), "expected a non-negative rate");
      n.legit.attempt_interval =
          n.attempt_rate_cps == 0 ? SimTime{} : SimTime::nanos(static_cast<std::uint64_t>(std::llround(1e9 / n.attempt_rate_cps)));
      n.legit.initial_rto = millis(r, "initial_rto_ms", n.legit.initial_rto);
      n.legit.max_rto = millis(r, "max_rto_ms", n.legit.max_rto);
      n.legit.max_retries = static_cast<std::uint32_t>(r.unsigned_int("max_retries", n.legit.max_retries));
      n.legit.cooldown = millis(r, "cooldown_ms", n.legit.cooldown);
      n.legit.start = millis(r, "start_ms", SimTime{});
      n.legit.stop = stop_time(r, "stop_ms");
      n.legit.per_hash_cost = per_hash(r);
    } else if (role == "attacker") {
      n.host_role = net::HostRole::Attacker;
      n.attacker.rate_pps = static_cast<std::uint32_t>(r.unsigned_int("rate_pps", 500));
      const std::string mode = r.string("mode", std::string("syn_flood"));
      if (mode == "syn_flood") {
        n.attacker.mode = endpoints::AttackMode::SynFlood;
      } else if (mode == "udp_flood") {
        n.attacker.mode = endpoints::AttackMode::UdpFlood;
      } else {
        schema_error(r.at("mode"), "expected \"syn_flood\" or \"udp_flood\"");
      }
      n.attacker.smart = r.boolean("smart", false);
      n.attacker.start = millis(r, "start_ms", SimTime{});
      n.attacker.stop = stop_time(r, "stop_ms");
      n.attacker.per_hash_cost = per_hash(r);
    } else {
      schema_error(r.at("role"), "host role must be \"legitimate\" or \"attacker\"");
    }
  } else if (kind == "router") {
    n.kind = net::NodeKind::Router;
    const std::string role = r.string("role", std::string("plain"));
    if (role == "plain") {
      n.router_role = net::RouterRole::Plain;
    } else if (role == "edge") {
      n.router_role = net::RouterRole::Edge;
    } else if (role == "intelligent") {
      n.router_role = net::RouterRole::Intelligent;
    } else {
      schema_error(r.at("role"), "router role must be \"plain\", \"edge\" or \"intelligent\"");
    }
  } else if (kind == "server") {
    n.kind = net::NodeKind::Server;
    n.server.backlog_capacity = static_cast<std::uint32_t>(r.unsigned_int("backlog_capacity", 256));
    n.server.half_open_timeout = millis(r, "half_open_timeout_ms", n.server.half_open_timeout);
    n.server.sweep_interval = millis(r, "sweep_interval_ms", n.server.sweep_interval);
  } else {
    schema_error(r.at("kind"), "expected \"host\", \"router\" or \"server\"");
  }
  r.finish();
  return n;
}

LinkConfig parse_link(const json& value, const std::string& path) {
  ObjectReader r(value, path);
  LinkConfig l;
  l.a = r.string("a");
  l.b = r.string("b");
  l.bandwidth_bps = r.unsigned_int("bandwidth_bps", l.bandwidth_bps);
  l.delay_ns = r.unsigned_int("delay_ns", l.delay_ns);
  l.queue_pkts = static_cast<std::uint32_t>(r.unsigned_int("queue_pkts", l.queue_pkts));
  r.finish();
  return l;
}

defense::DefenseParams parse_defense(const json* value, bool has_intelligent) {
  defense::DefenseParams d;
  d.enabled = has_intelligent;
  if (value == nullptr) return d;
  ObjectReader r(*value, "defense");
  d.enabled = r.boolean("enabled", has_intelligent);
  d.bucket = millis(r, "bucket_ms", d.bucket);
  d.bucket_count = static_cast<std::uint32_t>(r.unsigned_int("window_buckets", d.bucket_count));
  d.detection.drop_fraction_threshold = fraction(r, "drop_fraction_threshold", d.detection.drop_fraction_threshold);
  d.detection.suspect_share_threshold = fraction(r, "suspect_share_threshold", d.detection.suspect_share_threshold);
  d.detection.min_activity_bytes = r.unsigned_int("min_activity_bytes", d.detection.min_activity_bytes);
  d.detection.calm_windows = static_cast<std::uint32_t>(r.unsigned_int("calm_windows", d.detection.calm_windows));
  d.puzzle_timeout = millis(r, "puzzle_timeout_ms", d.puzzle_timeout);
  d.whitelist_ttl = millis(r, "whitelist_ttl_ms", d.whitelist_ttl);
  d.block_ttl = millis(r, "block_ttl_ms", d.block_ttl);
  d.admit_fraction = fraction(r, "admit_fraction", d.admit_fraction);
  d.repush_interval = millis(r, "repush_interval_ms", d.repush_interval);
  d.congestion_hold = millis(r, "congestion_hold_ms", d.congestion_hold);
  d.difficulty.initial_bits = static_cast<std::uint32_t>(r.unsigned_int("difficulty_initial", d.difficulty.initial_bits));
  d.difficulty.min_bits = static_cast<std::uint32_t>(r.unsigned_int("difficulty_min", d.difficulty.min_bits));
  d.difficulty.max_bits = static_cast<std::uint32_t>(r.unsigned_int("difficulty_max", d.difficulty.max_bits));
  d.difficulty.history_len = static_cast<std::uint32_t>(r.unsigned_int("difficulty_history", d.difficulty.history_len));
  d.difficulty.raise_at = fraction(r, "raise_solved_fraction", d.difficulty.raise_at);
  d.difficulty.lower_at = fraction(r, "lower_solved_fraction", d.difficulty.lower_at);
  r.finish();
  return d;
}

RunConfig parse_run(const json* value) {
  RunConfig run;
  if (value == nullptr) return run;
  ObjectReader r(*value, "run");
  const double duration_s = r.number("duration_s", 30.0);
  if (duration_s <= 0 || duration_s > 1e9) schema_error(r.at("duration_s"), "expected a positive duration");
  run.duration = SimTime::nanos(static_cast<std::uint64_t>(std::llround(duration_s * 1e9)));
  run.seed = r.unsigned_int("seed", run.seed);
  run.sample_interval = millis(r, "sample_interval_ms", run.sample_interval);
  run.sizes.control_bytes = static_cast<std::uint32_t>(r.unsigned_int("control_bytes", run.sizes.control_bytes));
  run.sizes.data_bytes = static_cast<std::uint32_t>(r.unsigned_int("data_bytes", run.sizes.data_bytes));
  r.finish();
  return run;
}

double ms_of(SimTime t) { return static_cast<double>(t.ns) / 1e6; }

std::uint64_t whole_ms(SimTime t) { return t.ns / 1'000'000ULL; }

}  // namespace

const NodeConfig* ScenarioConfig::find(std::string_view name) const {
  for (const auto& n : nodes) {
    if (n.name == name) return &n;
  }
  return nullptr;
}

NodeConfig* ScenarioConfig::find(std::string_view name) {
  for (auto& n : nodes) {
    if (n.name == name) return &n;
  }
  return nullptr;
}

ScenarioConfig parse_scenario(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError("config.syntax", "invalid JSON at byte " + std::to_string(e.byte));
  }

  ObjectReader root(doc, "");
  ScenarioConfig config;
  const json* nodes = root.take("nodes");
  if (nodes == nullptr) schema_error("nodes", "required array is missing");
  if (!nodes->is_array()) schema_error("nodes", "expected an array");
  for (std::size_t i = 0; i < nodes->size(); ++i) {
    config.nodes.push_back(parse_node((*nodes)[i], "nodes[" + std::to_string(i) + "]"));
  }
  const json* links = root.take("links");
  if (links == nullptr) schema_error("links", "required array is missing");
  if (!links->is_array()) schema_error("links", "expected an array");
  for (std::size_t i = 0; i < links->size(); ++i) {
    config.links.push_back(parse_link((*links)[i], "links[" + std::to_string(i) + "]"));
  }
  bool has_intelligent = false;
  for (const auto& n : config.nodes) {
    has_intelligent = has_intelligent || (n.kind == net::NodeKind::Router && n.router_role == net::RouterRole::Intelligent);
  }
  config.defense = parse_defense(root.take("defense"), has_intelligent);
  config.run = parse_run(root.take("run"));
  root.finish();

  validate(config);
  return config;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("config.io", "cannot open scenario file '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_scenario(text.str());
}

void validate(const ScenarioConfig& config) {
  std::vector<net::Node> nodes;
  bool has_intelligent = false;
  for (const auto& n : config.nodes) {
    net::Node node;
    node.name = n.name;
    node.kind = n.kind;
    node.host_role = n.host_role;
    node.router_role = n.router_role;
    has_intelligent = has_intelligent || node.is_intelligent();
    if (node.is_attacker() && n.attacker.rate_pps == 0) semantic_error("attacker '" + n.name + "' has rate_pps 0");
    if (n.kind == net::NodeKind::Server && n.server.sweep_interval.ns == 0) {
      semantic_error("server '" + n.name + "' has sweep_interval_ms 0");
    }
    nodes.push_back(std::move(node));
  }

  std::vector<net::LinkSpec> links;
  for (std::size_t i = 0; i < config.links.size(); ++i) {
    const LinkConfig& l = config.links[i];
    auto index_of = [&](const std::string& name) {
      for (std::uint32_t k = 0; k < nodes.size(); ++k) {
        if (nodes[k].name == name) return NodeId{k};
      }
      semantic_error("links[" + std::to_string(i) + "]: unknown node '" + name + "'");
    };
    links.push_back(net::LinkSpec{index_of(l.a), index_of(l.b), l.bandwidth_bps, SimTime::nanos(l.delay_ns), l.queue_pkts});
  }
  net::Topology topo(std::move(nodes), std::move(links));  // names, connectivity, one server, host attachment

  const auto& d = config.defense;
  if (d.enabled && !has_intelligent) semantic_error("defense.enabled requires a router with role \"intelligent\"");
  if (d.bucket.ns == 0 || d.bucket_count == 0) semantic_error("defense window must have a positive bucket width and count");
  if (d.admit_fraction.is_zero()) semantic_error("defense.admit_fraction must be greater than 0");
  if (d.difficulty.max_bits > defense::kMaxDifficultyBits) semantic_error("defense.difficulty_max must be <= 20");
  if (d.difficulty.min_bits > d.difficulty.initial_bits || d.difficulty.initial_bits > d.difficulty.max_bits) {
    semantic_error("defense difficulty must satisfy min <= initial <= max");
  }
  if (d.difficulty.history_len == 0) semantic_error("defense.difficulty_history must be positive");
  if (config.run.sample_interval.ns == 0) semantic_error("run.sample_interval_ms must be positive");
  if (config.run.sizes.control_bytes < 40 || config.run.sizes.data_bytes < 40) {
    semantic_error("packet sizes must be at least 40 bytes");
  }
}

std::string to_json(const ScenarioConfig& config) {
  json doc;
  json nodes = json::array();
  for (const auto& n : config.nodes) {
    json node{{"name", n.name}, {"kind", std::string(net::to_string(n.kind))}};
    if (n.kind == net::NodeKind::Host && n.host_role == net::HostRole::Legitimate) {
      node["role"] = "legitimate";
      node["attempt_rate_cps"] = n.attempt_rate_cps;
      node["initial_rto_ms"] = whole_ms(n.legit.initial_rto);
      node["max_rto_ms"] = whole_ms(n.legit.max_rto);
      node["max_retries"] = n.legit.max_retries;
      node["cooldown_ms"] = whole_ms(n.legit.cooldown);
      node["start_ms"] = whole_ms(n.legit.start);
      node["stop_ms"] = n.legit.stop == SimTime::max() ? json(nullptr) : json(whole_ms(n.legit.stop));
      node["per_hash_ns"] = n.legit.per_hash_cost.ns;
    } else if (n.kind == net::NodeKind::Host) {
      node["role"] = "attacker";
      node["rate_pps"] = n.attacker.rate_pps;
      node["mode"] = n.attacker.mode == endpoints::AttackMode::SynFlood ? "syn_flood" : "udp_flood";
      node["smart"] = n.attacker.smart;
      node["start_ms"] = whole_ms(n.attacker.start);
      node["stop_ms"] = n.attacker.stop == SimTime::max() ? json(nullptr) : json(whole_ms(n.attacker.stop));
      node["per_hash_ns"] = n.attacker.per_hash_cost.ns;
    } else if (n.kind == net::NodeKind::Router) {
      node["role"] = std::string(net::to_string(n.router_role));
    } else {
      node["backlog_capacity"] = n.server.backlog_capacity;
      node["half_open_timeout_ms"] = whole_ms(n.server.half_open_timeout);
      node["sweep_interval_ms"] = whole_ms(n.server.sweep_interval);
    }
    nodes.push_back(std::move(node));
  }
  json links = json::array();
  for (const auto& l : config.links) {
    links.push_back({{"a", l.a}, {"b", l.b}, {"bandwidth_bps", l.bandwidth_bps}, {"delay_ns", l.delay_ns},
                     {"queue_pkts", l.queue_pkts}});
  }
  const auto& d = config.defense;
  doc["nodes"] = std::move(nodes);
  doc["links"] = std::move(links);
  doc["defense"] = {
      {"enabled", d.enabled},
      {"bucket_ms", ms_of(d.bucket)},
      {"window_buckets", d.bucket_count},
      {"drop_fraction_threshold", d.detection.drop_fraction_threshold.to_double()},
      {"suspect_share_threshold", d.detection.suspect_share_threshold.to_double()},
      {"min_activity_bytes", d.detection.min_activity_bytes},
      {"calm_windows", d.detection.calm_windows},
      {"puzzle_timeout_ms", whole_ms(d.puzzle_timeout)},
      {"whitelist_ttl_ms", whole_ms(d.whitelist_ttl)},
      {"block_ttl_ms", whole_ms(d.block_ttl)},
      {"admit_fraction", d.admit_fraction.to_double()},
      {"repush_interval_ms", whole_ms(d.repush_interval)},
      {"congestion_hold_ms", whole_ms(d.congestion_hold)},
      {"difficulty_initial", d.difficulty.initial_bits},
      {"difficulty_min", d.difficulty.min_bits},
      {"difficulty_max", d.difficulty.max_bits},
      {"difficulty_history", d.difficulty.history_len},
      {"raise_solved_fraction", d.difficulty.raise_at.to_double()},
      {"lower_solved_fraction", d.difficulty.lower_at.to_double()},
  };
  doc["run"] = {
      {"duration_s", static_cast<double>(config.run.duration.ns) / 1e9},
      {"seed", config.run.seed},
      {"sample_interval_ms", whole_ms(config.run.sample_interval)},
      {"control_bytes", config.run.sizes.control_bytes},
      {"data_bytes", config.run.sizes.data_bytes},
  };
  return doc.dump(2);
}

}  // namespace pushback::scenario
