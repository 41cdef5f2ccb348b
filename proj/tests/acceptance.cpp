// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <openssl/sha.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <memory>
#include <sstream>
#include <string>

#include "pushback/defense/puzzle.hpp"
#include "pushback/endpoints/legit_client.hpp"
#include "pushback/engine/engine.hpp"
#include "pushback/scenario/config.hpp"
#include "pushback/sim/simulation.hpp"
#include "support.hpp"

using namespace pushback;
using pushback::testing::load;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::unique_ptr<sim::Simulation> run(scenario::ScenarioConfig config) {
  auto s = std::make_unique<sim::Simulation>(std::move(config));
  s->run();
  return s;
}

std::uint64_t completions(const sim::Simulation& s, SimTime from, SimTime to) {
  std::uint64_t milli = 0;
  for (const auto& r : s.metrics().rows()) {
    if (r.time > from && r.time <= to) milli += r.goodput_cps.milli;
  }
  // goodput_cps * interval = completions in that interval
  return milli * s.config().run.sample_interval.ns / 1'000'000'000'000ULL;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

scenario::ScenarioConfig single_attacker(bool defended) {
  auto cfg = load("figure4.json");
  testing::silence(cfg, "node20");
  cfg.defense.enabled = defended;
  return cfg;
}

scenario::ScenarioConfig baseline() {
  auto cfg = load("figure4.json");
  testing::silence_all_attackers(cfg);
  cfg.defense.enabled = false;
  return cfg;
}

// --- 1 -------------------------------------------------------------------

Verdict overwhelm() {
  sim::Simulation s(single_attacker(false));
  std::optional<SimTime> full_at;
  for (SimTime t{}; t <= SimTime::seconds(2) && !full_at; t += SimTime::micros(100)) {
    s.run_until(t);
    if (s.server().half_open_size() == 256) full_at = t;
  }
  s.run();
  auto base = run(baseline());
  const SimTime from = SimTime::seconds(5);
  const SimTime to = SimTime::seconds(15);
  const double attacked = static_cast<double>(completions(s, from, to));
  const double clean = static_cast<double>(completions(*base, from, to));
  const double ratio = clean == 0 ? 1.0 : attacked / clean;
  const double full_s = full_at ? static_cast<double>(full_at->ns) / 1e9 : -1;
  Verdict v;
  v.pass = full_at && full_s >= 0.4 && full_s <= 1.0 && ratio < 0.05;
  v.detail = "backlog full at " + (full_at ? fmt("%.4f s", full_s) : std::string("never")) +
             ", legit success 5-15 s = " + fmt("%.1f%%", 100 * ratio) + " of baseline";
  return v;
}

// --- 2 and 3 -------------------------------------------------------------

struct DefendedRun {
  std::unique_ptr<sim::Simulation> sim;
  std::string label;
};

Verdict efficacy(const DefendedRun& d) {
  const auto& s = *d.sim;
  Verdict v;
  if (s.block_log().empty()) {
    v.detail = d.label + ": no block installed";
    return v;
  }
  std::set<NodeId> attackers;
  for (const auto& n : s.topology().nodes()) {
    if (n.is_attacker() && s.attacker(n.id)->params().start < s.config().run.duration) attackers.insert(n.id);
  }
  SimTime confirmed{};
  std::set<NodeId> blocked;
  for (const auto& b : s.block_log()) {
    if (!attackers.contains(b.src) || blocked.contains(b.src)) continue;
    if (b.router != s.topology().edge_router(b.src)) continue;
    blocked.insert(b.src);
    confirmed = std::max(confirmed, b.at);
  }
  bool all_zero = true;
  SimTime last_attack_row{};
  for (const auto& r : s.metrics().rows()) {
    if (r.victim_in_bps_attack.milli != 0) last_attack_row = r.time;
    if (r.time > confirmed && r.victim_in_bps_attack.milli != 0) all_zero = false;
  }
  const auto violations = s.filter_violations();
  v.pass = blocked == attackers && confirmed < SimTime::seconds(5) && all_zero && violations.empty();
  v.detail = d.label + ": " + std::to_string(blocked.size()) + "/" + std::to_string(attackers.size()) +
             " attackers blocked at edge by " + fmt("%.3f s", confirmed.ns / 1e9) +
             ", last attack bytes at victim in sample " + fmt("%.1f s", last_attack_row.ns / 1e9) +
             ", filter violations " + std::to_string(violations.size());
  return v;
}

Verdict recovery(const DefendedRun& d, const sim::Simulation& base) {
  const SimTime end = d.sim->config().run.duration;
  const SimTime from = end - SimTime::seconds(10);
  const double got = testing::mean_goodput(d.sim->metrics().rows(), from, end);
  const double want = testing::mean_goodput(base.metrics().rows(), from, end);
  Verdict v;
  v.pass = want > 0 && got >= 0.9 * want;
  v.detail = d.label + ": final 10 s goodput " + fmt("%.3f cps", got) + " vs baseline " + fmt("%.3f cps", want) +
             " (" + fmt("%.1f%%", want > 0 ? 100 * got / want : 0) + ")";
  return v;
}

// --- 4 -------------------------------------------------------------------

bool oracle_valid(std::uint64_t id, std::uint32_t bits, std::uint64_t nonce) {
  std::uint8_t msg[16];
  for (int i = 0; i < 8; ++i) {
    msg[i] = static_cast<std::uint8_t>(id >> (56 - 8 * i));
    msg[8 + i] = static_cast<std::uint8_t>(nonce >> (56 - 8 * i));
  }
  std::uint8_t d[32];
  SHA256(msg, sizeof msg, d);
  for (std::uint32_t i = 0; i < bits; ++i) {
    if ((d[i / 8] >> (7 - i % 8)) & 1U) return false;
  }
  return true;
}

Verdict puzzle_oracle() {
  const auto started = std::chrono::steady_clock::now();
  SplitMix64 rng(20240601);
  int checked = 0;
  int mismatches = 0;
  for (std::uint32_t bits : {0U, 4U, 8U, 12U}) {
    for (int c = 0; c < 10; ++c) {
      const std::uint64_t id = rng.next();
      std::uint64_t minimum = 0;
      while (!oracle_valid(id, bits, minimum)) ++minimum;

      // The nonce a host actually submits, through the client's solve path.
      net::PacketFactory factory;
      endpoints::LegitClient host(NodeId{0}, NodeId{2}, endpoints::LegitParams{});
      const auto ch = factory.make(net::PacketKind::PuzzleChallenge, NodeId{1}, NodeId{0}, 0, SimTime{},
                                   net::ChallengeBody{id, bits, SimTime{}, SimTime::seconds(2)});
      const auto timer = host.on_packet(ch, SimTime{}, factory).timers.at(0);
      const auto resp = host.on_timer(timer, timer.at, factory).send.at(0);
      const std::uint64_t submitted = std::get<net::ResponseBody>(resp.body).nonce;

      if (submitted != minimum || !defense::verify_solution(id, bits, submitted)) ++mismatches;
      for (int k = 0; k < 100; ++k) {
        std::uint64_t probe = rng.next() % (8 * minimum + 256);
        if (probe == minimum) ++probe;
        if (defense::verify_solution(id, bits, probe) != oracle_valid(id, bits, probe)) ++mismatches;
      }
      ++checked;
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  Verdict v;
  v.pass = mismatches == 0 && secs < 10.0;
  v.detail = std::to_string(checked) + " challenges, " + std::to_string(mismatches) + " mismatches, " +
             fmt("%.2f s wall", secs);
  return v;
}

// --- 5 -------------------------------------------------------------------

Verdict adaptive_difficulty() {
  auto smart = run(load("smart_attackers.json"));
  auto naive = run(load("naive_attackers.json"));
  const auto& rows = smart->metrics().rows();
  int increases = 0;
  bool steps_ok = true;
  std::uint64_t solved_at_first = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto prev = rows[i - 1].difficulty_bits;
    const auto cur = rows[i].difficulty_bits;
    if (cur == prev) continue;
    if (cur != prev + 1) steps_ok = false;
    if (increases++ == 0) solved_at_first = rows[i].puzzles_solved;
  }
  const std::uint32_t first_bits = rows.front().difficulty_bits;
  const std::uint32_t last_bits = rows.back().difficulty_bits;
  bool naive_flat = true;
  for (const auto& r : naive->metrics().rows()) naive_flat = naive_flat && r.difficulty_bits <= first_bits;
  Verdict v;
  v.pass = increases == 1 && steps_ok && solved_at_first >= 20 && last_bits == first_bits + 1 && naive_flat;
  v.detail = "smart: " + std::to_string(first_bits) + " -> " + std::to_string(last_bits) + " bits after " +
             std::to_string(solved_at_first) + " solved (" + std::to_string(rows.back().puzzles_solved) +
             " total); naive: " + (naive_flat ? "never increased" : "INCREASED");
  return v;
}

// --- 6 -------------------------------------------------------------------

const char* kFixtures[] = {"figure4.json", "smart_attackers.json", "naive_attackers.json", "udp_flood.json"};

Verdict determinism() {
  int identical = 0;
  int seed_only = 0;
  int total = 0;
  for (const char* file : kFixtures) {
    ++total;
    auto a = run(load(file));
    auto b = run(load(file));
    if (testing::csv_of(*a) == testing::csv_of(*b) && a->event_digest() == b->event_digest()) ++identical;

    // A different seed changes only PRNG consumers: with the defense off nothing draws.
    auto off1 = load(file);
    off1.defense.enabled = false;
    auto off2 = off1;
    off2.run.seed = off1.run.seed + 1000;
    auto echo1 = scenario::to_json(off1);
    auto echo2 = scenario::to_json(off2);
    const auto strip = [](std::string s, std::uint64_t seed) {
      const std::string key = "\"seed\": " + std::to_string(seed);
      return s.replace(s.find(key), key.size(), "\"seed\": _");
    };
    if (testing::csv_of(*run(off1)) == testing::csv_of(*run(off2)) &&
        strip(echo1, off1.run.seed) == strip(echo2, off2.run.seed)) {
      ++seed_only;
    }
  }
  Verdict v;
  v.pass = identical == total && seed_only == total;
  v.detail = std::to_string(identical) + "/" + std::to_string(total) + " fixtures byte-identical on rerun, " +
             std::to_string(seed_only) + "/" + std::to_string(total) + " seed-invariant without PRNG consumers";
  return v;
}

// --- 7 -------------------------------------------------------------------

Verdict conservation() {
  int runs = 0;
  int ok = 0;
  std::size_t worst_backlog = 0;
  for (const char* file : kFixtures) {
    for (bool defended : {true, false}) {
      auto cfg = load(file);
      cfg.defense.enabled = defended;
      ++runs;
      try {
        auto s = run(cfg);  // the backlog bound is asserted on every table mutation
        worst_backlog = std::max(worst_backlog, s->server().max_half_open_seen());
        if (s->queues_conserved() && s->server().max_half_open_seen() <= 256) ++ok;
      } catch (const SimulationFault&) {
      }
    }
  }
  Verdict v;
  v.pass = ok == runs;
  v.detail = std::to_string(ok) + "/" + std::to_string(runs) + " runs conserved, max half-open " +
             std::to_string(worst_backlog);
  return v;
}

// --- 8 -------------------------------------------------------------------

Verdict event_order() {
  Engine<std::uint32_t> engine(8);
  SplitMix64 rng(31337);
  for (int i = 0; i < 1000; ++i) engine.schedule(SimTime{rng.next() % 1'000'000}, NodeId{0}, 0);
  std::uint64_t last_at = 0;
  std::uint64_t last_seq = 0;
  bool first = true;
  bool ordered = true;
  std::uint64_t total = 0;
  const std::uint64_t target = 1'000'000;
  while (total < target && engine.pending() > 0) {
    total += engine.run_until(SimTime{engine.now().ns + 10'000'000}, [&](Event<std::uint32_t>& ev) {
      if (!first && !(ev.fire_at.ns > last_at || (ev.fire_at.ns == last_at && ev.seq > last_seq))) ordered = false;
      if (ev.fire_at != engine.now()) ordered = false;
      first = false;
      last_at = ev.fire_at.ns;
      last_seq = ev.seq;
      if (engine.processed() + engine.pending() < target) {
        const std::uint64_t fan = 1 + rng.next() % 2;
        for (std::uint64_t k = 0; k < fan; ++k) {
          const std::uint64_t r = rng.next();
          const SimTime at = (r & 7) == 0 ? engine.now() : SimTime{engine.now().ns + r % 2'000'000};
          engine.schedule(at, NodeId{static_cast<std::uint32_t>(r >> 40)}, 0);
        }
      }
    });
  }
  Verdict v;
  v.pass = ordered && total >= target;
  v.detail = std::to_string(total) + " events, " + (ordered ? "strictly increasing" : "ORDER VIOLATED");
  return v;
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](int n, const char* name, const Verdict& v) {
    std::printf("criterion %d %-22s %s  %s\n", n, name, v.pass ? "PASS" : "FAIL", v.detail.c_str());
    std::fflush(stdout);
    failures += v.pass ? 0 : 1;
  };

  const auto t0 = std::chrono::steady_clock::now();
  const Verdict c1 = overwhelm();
  const double c1_wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  Verdict c1_timed = c1;
  c1_timed.pass = c1.pass && c1_wall < 5.0;
  c1_timed.detail += ", " + fmt("%.2f s wall", c1_wall);
  report(1, "overwhelm", c1_timed);

  auto base = run(baseline());
  DefendedRun single{run(single_attacker(true)), "one attacker"};
  DefendedRun both{run(load("figure4.json")), "two attackers"};
  const Verdict e1 = efficacy(single);
  const Verdict e2 = efficacy(both);
  report(2, "defense-efficacy", Verdict{e1.pass && e2.pass, e1.detail + "; " + e2.detail});
  const Verdict r1 = recovery(single, *base);
  const Verdict r2 = recovery(both, *base);
  report(3, "legit-recovery", Verdict{r1.pass && r2.pass, r1.detail + "; " + r2.detail});

  report(4, "puzzle-oracle", puzzle_oracle());
  report(5, "adaptive-difficulty", adaptive_difficulty());
  report(6, "determinism", determinism());
  report(7, "conservation", conservation());
  report(8, "event-order", event_order());

  std::printf("%s: %d of 8 criteria failed\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
  return failures == 0 ? 0 : 1;
}
