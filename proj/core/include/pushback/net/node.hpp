#pragma once

#include <string>
#include <string_view>

#include "pushback/engine/node_id.hpp"

namespace pushback::net {

enum class NodeKind { Host, Router, Server };
enum class HostRole { Legitimate, Attacker };
enum class RouterRole { Plain, Intelligent, Edge };

struct Node {
  NodeId id;
  std::string name;
  NodeKind kind = NodeKind::Router;
  HostRole host_role = HostRole::Legitimate;     // meaningful for hosts only
  RouterRole router_role = RouterRole::Plain;    // meaningful for routers only

  bool is_host() const { return kind == NodeKind::Host; }
  bool is_router() const { return kind == NodeKind::Router; }
  bool is_server() const { return kind == NodeKind::Server; }
  bool is_attacker() const { return is_host() && host_role == HostRole::Attacker; }
  bool is_intelligent() const { return is_router() && router_role == RouterRole::Intelligent; }
};

std::string_view to_string(NodeKind kind);
std::string_view to_string(HostRole role);
std::string_view to_string(RouterRole role);

}  // namespace pushback::net
