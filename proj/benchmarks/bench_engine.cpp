#include <benchmark/benchmark.h>

#include "pushback/engine/engine.hpp"
#include "pushback/engine/prng.hpp"

using namespace pushback;

// Steady-state heap: every handled event schedules one replacement.
static void BM_EngineHold(benchmark::State& state) {
  const auto depth = static_cast<int>(state.range(0));
  for (auto _ : state) {
    Engine<std::uint32_t> engine(1);
    SplitMix64 rng(9);
    for (int i = 0; i < depth; ++i) engine.schedule(SimTime{rng.next() % 1'000'000}, NodeId{0}, 0);
    std::uint64_t left = 100'000;
    engine.run_until(SimTime{~0ULL >> 2}, [&](Event<std::uint32_t>&) {
      if (left > 0 && --left > 0) engine.schedule(SimTime{engine.now().ns + rng.next() % 1'000'000}, NodeId{0}, 0);
    });
    benchmark::DoNotOptimize(engine.digest());
  }
  state.SetItemsProcessed(state.iterations() * 100'000);
}
BENCHMARK(BM_EngineHold)->Arg(16)->Arg(1024)->Arg(65536);

static void BM_SplitMix(benchmark::State& state) {
  SplitMix64 rng(42);
  for (auto _ : state) benchmark::DoNotOptimize(rng.next());
}
BENCHMARK(BM_SplitMix);
BENCHMARK_MAIN();
