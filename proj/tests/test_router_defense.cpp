#include <doctest.h>

#include "pushback/defense/puzzle.hpp"
#include "pushback/defense/router_defense.hpp"
#include "pushback/sim/simulation.hpp"
#include "support.hpp"

using namespace pushback;
using namespace pushback::defense;
using net::PacketKind;

namespace {

struct Fig4 {
  net::Topology topo = sim::build_topology(testing::load("figure4.json"));
  SplitMix64 rng{99};
  net::PacketFactory factory;

  NodeId id(const char* name) const { return *topo.find(name); }

  net::WindowStats attack_window(std::initializer_list<const char*> attackers) const {
    net::WindowStats s;
    for (const char* a : attackers) {
      s.sources.push_back(net::SourceWindow{id(a), 20'000, 10'000});
      s.total_arrived += 20'000;
      s.total_dropped += 10'000;
    }
    return s;
  }

  net::Packet pushback(NodeId from, NodeId to, std::vector<NodeId> suspects) {
    return factory.make(PacketKind::PushbackRequest, from, to, 0, SimTime{}, net::PushbackBody{1, topo.server(), suspects});
  }

  net::Packet response(NodeId host, NodeId router, std::uint64_t challenge_id, std::uint64_t nonce) {
    return factory.make(PacketKind::PuzzleResponse, host, router, 0, SimTime{}, net::ResponseBody{challenge_id, nonce});
  }
};

const net::PushbackBody& body_of(const net::Packet& p) { return std::get<net::PushbackBody>(p.body); }

}  // namespace

TEST_CASE("suspects behind different upstream routers get one request each") {
  Fig4 f;
  RouterDefense node24(f.id("node24"), f.topo, DefenseParams{}, f.rng);
  auto out = node24.on_observe(f.attack_window({"node5", "node20"}), SimTime::seconds(1), f.factory);
  REQUIRE(out.send.size() == 2);
  CHECK(out.send[0].kind == PacketKind::PushbackRequest);
  CHECK(out.send[0].dst == f.id("node22"));
  CHECK(body_of(out.send[0]).suspects == std::vector<NodeId>{f.id("node5")});
  CHECK(out.send[1].dst == f.id("node23"));
  CHECK(body_of(out.send[1]).suspects == std::vector<NodeId>{f.id("node20")});
  CHECK(node24.rate_limit(f.id("node5")) != nullptr);
  CHECK(node24.rate_limit(f.id("node20")) != nullptr);
  REQUIRE(node24.current_signature() != nullptr);
  CHECK(node24.current_signature()->state == SignatureState::Pushed);
  CHECK(node24.counters().signatures_created == 1);
}

TEST_CASE("suspects sharing an upstream router travel in one request") {
  Fig4 f;
  RouterDefense node24(f.id("node24"), f.topo, DefenseParams{}, f.rng);
  auto out = node24.on_observe(f.attack_window({"node1", "node5"}), SimTime::seconds(1), f.factory);
  REQUIRE(out.send.size() == 1);
  CHECK(body_of(out.send[0]).suspects == std::vector<NodeId>{f.id("node1"), f.id("node5")});
}

TEST_CASE("a refreshed signature does not re-push before the repush interval") {
  Fig4 f;
  RouterDefense node24(f.id("node24"), f.topo, DefenseParams{}, f.rng);
  const auto w = f.attack_window({"node5"});
  CHECK(node24.on_observe(w, SimTime::millis(1000), f.factory).send.size() == 1);
  CHECK(node24.on_observe(w, SimTime::millis(1100), f.factory).send.empty());
  CHECK(node24.on_observe(w, SimTime::millis(2000), f.factory).send.size() == 1);
  CHECK(node24.counters().signatures_created == 1);
}

TEST_CASE("a directly attached suspect is challenged by the detecting router") {
  const auto cfg = scenario::parse_scenario(testing::line_scenario(R"({"enabled": true})"));
  const auto topo = sim::build_topology(cfg);
  SplitMix64 rng(1);
  net::PacketFactory factory;
  RouterDefense r1(*topo.find("r1"), topo, DefenseParams{}, rng);
  net::WindowStats s;
  s.sources.push_back(net::SourceWindow{*topo.find("client"), 20'000, 10'000});
  s.total_arrived = 20'000;
  s.total_dropped = 10'000;
  auto out = r1.on_observe(s, SimTime::seconds(1), factory);
  REQUIRE(out.send.size() == 1);
  CHECK(out.send[0].kind == PacketKind::PuzzleChallenge);
  CHECK(out.send[0].dst == *topo.find("client"));
  CHECK(out.deadlines.size() == 1);
}

TEST_CASE("pushback request issues challenges at the current difficulty") {
  Fig4 f;
  RouterDefense node22(f.id("node22"), f.topo, DefenseParams{}, f.rng);
  const SimTime now = SimTime::millis(700);
  auto out = node22.on_pushback_req(f.pushback(f.id("node24"), f.id("node22"), {f.id("node5")}), now, f.factory);
  REQUIRE(out.send.size() == 1);
  const auto& ch = std::get<net::ChallengeBody>(out.send[0].body);
  CHECK(ch.difficulty_bits == 8);
  CHECK(ch.deadline == now + SimTime::seconds(2));
  REQUIRE(out.deadlines.size() == 1);
  CHECK(out.deadlines[0].at == ch.deadline);
  CHECK(node22.rate_limit(f.id("node5")) != nullptr);
  CHECK(node22.congestion_active(now));

  SUBCASE("repeat requests are idempotent") {
    auto again = node22.on_pushback_req(f.pushback(f.id("node24"), f.id("node22"), {f.id("node5")}), now, f.factory);
    CHECK(again.send.empty());
    CHECK(node22.counters().puzzles_issued == 1);
  }
  SUBCASE("two suspects get distinct challenge ids") {
    auto two = node22.on_pushback_req(f.pushback(f.id("node24"), f.id("node22"), {f.id("node1"), f.id("node2")}), now,
                                      f.factory);
    REQUIRE(two.send.size() == 2);
    CHECK(std::get<net::ChallengeBody>(two.send[0].body).challenge_id !=
          std::get<net::ChallengeBody>(two.send[1].body).challenge_id);
  }
}

TEST_CASE("puzzle outcomes") {
  Fig4 f;
  RouterDefense node22(f.id("node22"), f.topo, DefenseParams{}, f.rng);
  const NodeId node5 = f.id("node5");
  auto out = node22.on_pushback_req(f.pushback(f.id("node24"), f.id("node22"), {node5}), SimTime{}, f.factory);
  const auto ch = std::get<net::ChallengeBody>(out.send.at(0).body);
  const std::uint64_t nonce = solve_minimal(ch.challenge_id, ch.difficulty_bits);

  SUBCASE("valid nonce one nanosecond before the deadline validates") {
    auto r = node22.on_puzzle_resp(f.response(node5, f.id("node22"), ch.challenge_id, nonce), ch.deadline - SimTime{1},
                                   f.factory);
    CHECK(r.send.empty());
    CHECK(node22.is_whitelisted(node5, ch.deadline));
    CHECK(node22.rate_limit(node5) == nullptr);
    CHECK(node22.counters().puzzles_solved == 1);
    CHECK(node22.difficulty().history().back() == PuzzleOutcome::Solved);
    // Whitelisted hosts are not challenged again.
    CHECK(node22.on_pushback_req(f.pushback(f.id("node24"), f.id("node22"), {node5}), ch.deadline, f.factory)
              .send.empty());
    // The deadline timer later finds nothing outstanding.
    CHECK(node22.on_puzzle_timeout(node5, ch.challenge_id, ch.deadline, f.factory).send.empty());
  }
  SUBCASE("a response at the deadline counts as a failure") {
    auto r = node22.on_puzzle_resp(f.response(node5, f.id("node22"), ch.challenge_id, nonce), ch.deadline, f.factory);
    REQUIRE(r.send.size() == 1);
    CHECK(r.send[0].kind == PacketKind::BlockRequest);
  }
  SUBCASE("timeout confirms and asks the edge router to block") {
    auto r = node22.on_puzzle_timeout(node5, ch.challenge_id, ch.deadline, f.factory);
    REQUIRE(r.send.size() == 1);
    CHECK(r.send[0].kind == PacketKind::BlockRequest);
    CHECK(r.send[0].dst == f.id("node6"));
    const auto& b = std::get<net::BlockBody>(r.send[0].body);
    CHECK(b.src == node5);
    CHECK(b.ttl == SimTime::seconds(60));
    CHECK(node22.counters().puzzles_failed == 1);
    CHECK(node22.is_confirmed(node5, ch.deadline));
    // A late response is ignored.
    auto late = node22.on_puzzle_resp(f.response(node5, f.id("node22"), ch.challenge_id, nonce),
                                      ch.deadline + SimTime{1}, f.factory);
    CHECK(late.send.empty());
    CHECK(node22.counters().stray_responses == 1);
  }
  SUBCASE("an invalid nonce confirms immediately") {
    std::uint64_t bad = 0;
    while (verify_solution(ch.challenge_id, ch.difficulty_bits, bad)) ++bad;
    auto r = node22.on_puzzle_resp(f.response(node5, f.id("node22"), ch.challenge_id, bad), SimTime::millis(1),
                                   f.factory);
    REQUIRE(r.send.size() == 1);
    CHECK(r.send[0].kind == PacketKind::BlockRequest);
    CHECK(node22.outstanding(node5) == std::nullopt);
  }
  SUBCASE("a response with the wrong challenge id is stray") {
    auto r = node22.on_puzzle_resp(f.response(node5, f.id("node22"), ch.challenge_id + 1, nonce), SimTime::millis(1),
                                   f.factory);
    CHECK(r.send.empty());
    CHECK(node22.outstanding(node5).has_value());
  }
}

TEST_CASE("block requests install blocks with their ttl") {
  Fig4 f;
  RouterDefense node6(f.id("node6"), f.topo, DefenseParams{}, f.rng);
  const NodeId node5 = f.id("node5");
  const auto req = f.factory.make(PacketKind::BlockRequest, f.id("node22"), f.id("node6"), 0, SimTime{},
                                  net::BlockBody{node5, SimTime::seconds(60)});
  node6.on_block_req(req, SimTime::seconds(3));
  CHECK(node6.is_blocked(node5, SimTime::seconds(3)));
  CHECK(node6.is_blocked(node5, SimTime::seconds(63)));
  CHECK_FALSE(node6.is_blocked(node5, SimTime::seconds(63) + SimTime{1}));
  CHECK(node6.active_blocks(SimTime::seconds(10)) == 1);
  auto syn = f.factory.make(PacketKind::Syn, node5, f.topo.server(), 1, SimTime::seconds(4));
  CHECK(node6.inspect(syn, SimTime::seconds(4)) == net::FilterVerdict::Blocked);
  CHECK(node6.counters().filtered_pkts == 1);
}

TEST_CASE("resolving the signature lifts its rate limits") {
  Fig4 f;
  RouterDefense node24(f.id("node24"), f.topo, DefenseParams{}, f.rng);
  node24.on_observe(f.attack_window({"node5"}), SimTime::seconds(1), f.factory);
  REQUIRE(node24.rate_limit(f.id("node5")) != nullptr);
  net::WindowStats calm;
  calm.total_arrived = 50'000;
  calm.sources.push_back(net::SourceWindow{f.id("node1"), 50'000, 0});
  for (int i = 1; i <= 3; ++i) node24.on_observe(calm, SimTime::seconds(1) + SimTime::millis(100 * i), f.factory);
  CHECK(node24.current_signature() == nullptr);
  CHECK(node24.signatures().back().state == SignatureState::Resolved);
  CHECK(node24.rate_limit(f.id("node5")) == nullptr);
}

TEST_CASE("disabled defense never detects") {
  Fig4 f;
  DefenseParams off;
  off.enabled = false;
  RouterDefense node24(f.id("node24"), f.topo, off, f.rng);
  CHECK(node24.on_observe(f.attack_window({"node5"}), SimTime::seconds(1), f.factory).send.empty());
  CHECK(node24.signatures().empty());
}
