#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pushback/engine/node_id.hpp"
#include "pushback/net/link_queue.hpp"
#include "pushback/net/node.hpp"

namespace pushback::net {

struct LinkRef {
  std::uint32_t link = 0;
  Direction dir = Direction::AtoB;
};

/// Static graph plus hop-count routing.
///
/// next_hop(u, d) is the lowest-id neighbor of u that is one hop closer to d.
/// Construction validates the graph and throws ConfigError naming the
/// offending entry.
class Topology {
 public:
  Topology(std::vector<Node> nodes, std::vector<LinkSpec> links);

  std::size_t node_count() const { return nodes_.size(); }
  const std::vector<Node>& nodes() const { return nodes_; }
  const Node& node(NodeId id) const { return nodes_.at(id.index); }
  std::optional<NodeId> find(std::string_view name) const;

  const std::vector<LinkSpec>& links() const { return links_; }
  const std::vector<NodeId>& neighbors(NodeId id) const { return adjacency_.at(id.index); }

  NodeId next_hop(NodeId from, NodeId dst) const;
  std::uint32_t hop_count(NodeId from, NodeId dst) const;
  std::vector<NodeId> path(NodeId from, NodeId dst) const;

  /// Link and direction carrying traffic from `from` to its neighbor `to`.
  LinkRef link_between(NodeId from, NodeId to) const;

  /// The router a host attaches to. Throws for non-hosts.
  NodeId edge_router(NodeId host) const;

  NodeId server() const { return server_; }

 private:
  std::vector<Node> nodes_;
  std::vector<LinkSpec> links_;
  std::vector<std::vector<NodeId>> adjacency_;          // sorted ascending
  std::vector<std::vector<std::uint32_t>> distance_;    // [from][dst]
  std::vector<std::vector<NodeId>> next_hop_;           // [from][dst]
  std::vector<std::vector<std::optional<LinkRef>>> link_index_;  // [from][to]
  std::vector<NodeId> edge_router_;
  NodeId server_;
};

}  // namespace pushback::net
