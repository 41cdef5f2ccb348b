#include "pushback/net/topology.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <set>
#include <string>

#include "pushback/engine/error.hpp"

namespace pushback::net {

namespace {

constexpr std::uint32_t kUnreachable = std::numeric_limits<std::uint32_t>::max();

[[noreturn]] void reject(const std::string& message) { throw ConfigError("config.semantic", message); }

}  // namespace

Topology::Topology(std::vector<Node> nodes, std::vector<LinkSpec> links)
    : nodes_(std::move(nodes)), links_(std::move(links)) {
  const std::size_t n = nodes_.size();
  if (n == 0) reject("scenario has no nodes");

  std::set<std::string> names;
  for (std::uint32_t i = 0; i < n; ++i) {
    nodes_[i].id = NodeId{i};
    if (!names.insert(nodes_[i].name).second) reject("duplicate node name '" + nodes_[i].name + "'");
  }

  adjacency_.assign(n, {});
  link_index_.assign(n, std::vector<std::optional<LinkRef>>(n));
  for (std::uint32_t li = 0; li < links_.size(); ++li) {
    const LinkSpec& l = links_[li];
    const std::string label = "links[" + std::to_string(li) + "]";
    if (!l.a.valid() || !l.b.valid() || l.a.index >= n || l.b.index >= n) reject(label + ": unknown endpoint");
    if (l.a == l.b) reject(label + ": self-loop on '" + nodes_[l.a.index].name + "'");
    if (l.bandwidth_bps == 0) reject(label + ": zero bandwidth");
    if (l.capacity_pkts == 0) reject(label + ": zero queue capacity");
    if (link_index_[l.a.index][l.b.index]) {
      reject(label + ": duplicate link " + nodes_[l.a.index].name + "-" + nodes_[l.b.index].name);
    }
    link_index_[l.a.index][l.b.index] = LinkRef{li, Direction::AtoB};
    link_index_[l.b.index][l.a.index] = LinkRef{li, Direction::BtoA};
    adjacency_[l.a.index].push_back(l.b);
    adjacency_[l.b.index].push_back(l.a);
  }
  for (auto& adj : adjacency_) std::sort(adj.begin(), adj.end());

  std::size_t servers = 0;
  for (const Node& node : nodes_) {
    if (node.is_server()) {
      ++servers;
      server_ = node.id;
    }
  }
  if (servers != 1) reject("scenario must have exactly one server, found " + std::to_string(servers));

  // BFS from every destination gives dist[*][dst].
  distance_.assign(n, std::vector<std::uint32_t>(n, kUnreachable));
  for (std::uint32_t dst = 0; dst < n; ++dst) {
    std::deque<std::uint32_t> frontier{dst};
    distance_[dst][dst] = 0;
    while (!frontier.empty()) {
      const std::uint32_t u = frontier.front();
      frontier.pop_front();
      for (NodeId v : adjacency_[u]) {
        if (distance_[v.index][dst] != kUnreachable) continue;
        distance_[v.index][dst] = distance_[u][dst] + 1;
        frontier.push_back(v.index);
      }
    }
  }
  for (std::uint32_t i = 1; i < n; ++i) {
    if (distance_[i][0] == kUnreachable) {
      reject("disconnected topology: '" + nodes_[i].name + "' cannot reach '" + nodes_[0].name + "'");
    }
  }

  next_hop_.assign(n, std::vector<NodeId>(n));
  for (std::uint32_t u = 0; u < n; ++u) {
    for (std::uint32_t dst = 0; dst < n; ++dst) {
      if (u == dst) {
        next_hop_[u][dst] = NodeId{u};
        continue;
      }
      for (NodeId v : adjacency_[u]) {  // ascending, so the first match is the lowest id
        if (distance_[v.index][dst] + 1 == distance_[u][dst]) {
          next_hop_[u][dst] = v;
          break;
        }
      }
    }
  }

  edge_router_.assign(n, kNoNode);
  for (const Node& node : nodes_) {
    if (!node.is_host()) continue;
    const auto& adj = adjacency_[node.id.index];
    if (adj.size() != 1) {
      reject("host '" + node.name + "' must attach to exactly one router, has " + std::to_string(adj.size()) + " links");
    }
    const Node& edge = nodes_[adj.front().index];
    if (!edge.is_router()) reject("host '" + node.name + "' attaches to non-router '" + edge.name + "'");
    edge_router_[node.id.index] = edge.id;
  }
}

std::optional<NodeId> Topology::find(std::string_view name) const {
  for (const Node& node : nodes_) {
    if (node.name == name) return node.id;
  }
  return std::nullopt;
}

NodeId Topology::next_hop(NodeId from, NodeId dst) const {
  if (from.index >= nodes_.size() || dst.index >= nodes_.size()) throw SimulationFault("no route: node id out of range");
  return next_hop_[from.index][dst.index];
}

std::uint32_t Topology::hop_count(NodeId from, NodeId dst) const { return distance_.at(from.index).at(dst.index); }

std::vector<NodeId> Topology::path(NodeId from, NodeId dst) const {
  std::vector<NodeId> hops{from};
  while (hops.back() != dst) hops.push_back(next_hop(hops.back(), dst));
  return hops;
}

LinkRef Topology::link_between(NodeId from, NodeId to) const {
  const auto& ref = link_index_.at(from.index).at(to.index);
  if (!ref) throw SimulationFault("no link between '" + node(from).name + "' and '" + node(to).name + "'");
  return *ref;
}

NodeId Topology::edge_router(NodeId host) const {
  const NodeId edge = edge_router_.at(host.index);
  if (!edge.valid()) throw SimulationFault("'" + node(host).name + "' is not a host");
  return edge;
}

}  // namespace pushback::net
