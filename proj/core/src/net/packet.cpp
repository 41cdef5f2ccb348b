#include "pushback/net/packet.hpp"

namespace pushback::net {

std::string_view to_string(PacketKind kind) {
  switch (kind) {
    case PacketKind::Syn: return "SYN";
    case PacketKind::SynAck: return "SYNACK";
    case PacketKind::Ack: return "ACK";
    case PacketKind::Data: return "DATA";
    case PacketKind::Udp: return "UDP";
    case PacketKind::IcmpUnreach: return "ICMP_UNREACH";
    case PacketKind::PuzzleChallenge: return "PUZZLE_CH";
    case PacketKind::PuzzleResponse: return "PUZZLE_RESP";
    case PacketKind::PushbackRequest: return "PUSHBACK_REQ";
    case PacketKind::BlockRequest: return "BLOCK_REQ";
  }
  return "?";
}

bool well_formed(const Packet& p) {
  if (p.size_bytes < 40 || p.src == p.dst) return false;
  switch (p.kind) {
    case PacketKind::PuzzleChallenge: return std::holds_alternative<ChallengeBody>(p.body);
    case PacketKind::PuzzleResponse: return std::holds_alternative<ResponseBody>(p.body);
    case PacketKind::PushbackRequest: return std::holds_alternative<PushbackBody>(p.body);
    case PacketKind::BlockRequest: return std::holds_alternative<BlockBody>(p.body);
    default: return std::holds_alternative<std::monostate>(p.body);
  }
}

Packet PacketFactory::make(PacketKind kind, NodeId src, NodeId dst, std::uint32_t flow_tag, SimTime now,
                           PacketBody body) {
  Packet p;
  p.id = next_id_++;
  p.src = src;
  p.dst = dst;
  p.kind = kind;
  p.size_bytes = (kind == PacketKind::Data || kind == PacketKind::Udp) ? sizes_.data_bytes : sizes_.control_bytes;
  p.flow_tag = flow_tag;
  p.created_at = now;
  p.body = std::move(body);
  return p;
}

}  // namespace pushback::net
