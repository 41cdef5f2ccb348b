#include <benchmark/benchmark.h>

#include <string>

#include "pushback/scenario/config.hpp"
#include "pushback/sim/simulation.hpp"

using namespace pushback;

static void run_fixture(benchmark::State& state, const char* file, bool defended) {
  auto config = scenario::load_scenario(std::string(PUSHBACK_SCENARIO_DIR) + "/" + file);
  config.defense.enabled = defended;
  std::uint64_t events = 0;
  for (auto _ : state) {
    sim::Simulation s(config);
    s.run();
    events += s.events_processed();
  }
  state.counters["events/s"] = benchmark::Counter(static_cast<double>(events), benchmark::Counter::kIsRate);
}

static void BM_Figure4Defended(benchmark::State& state) { run_fixture(state, "figure4.json", true); }
static void BM_Figure4Undefended(benchmark::State& state) { run_fixture(state, "figure4.json", false); }
static void BM_SmartAttackers(benchmark::State& state) { run_fixture(state, "smart_attackers.json", true); }

BENCHMARK(BM_Figure4Defended)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Figure4Undefended)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SmartAttackers)->Unit(benchmark::kMillisecond);
