#include "pushback/net/node.hpp"

namespace pushback::net {

std::string_view to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::Host: return "host";
    case NodeKind::Router: return "router";
    case NodeKind::Server: return "server";
  }
  return "?";
}

std::string_view to_string(HostRole role) {
  return role == HostRole::Attacker ? "attacker" : "legitimate";
}

std::string_view to_string(RouterRole role) {
  switch (role) {
    case RouterRole::Plain: return "plain";
    case RouterRole::Intelligent: return "intelligent";
    case RouterRole::Edge: return "edge";
  }
  return "?";
}

}  // namespace pushback::net
