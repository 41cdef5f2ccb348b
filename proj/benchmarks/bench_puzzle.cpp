#include <benchmark/benchmark.h>

#include <vector>

#include "pushback/defense/puzzle.hpp"
#include "pushback/defense/sha256.hpp"

using namespace pushback::defense;

static void BM_Sha256(benchmark::State& state) {
  std::vector<std::uint8_t> data(static_cast<std::size_t>(state.range(0)), 0x5a);
  for (auto _ : state) benchmark::DoNotOptimize(sha256(data));
  state.SetBytesProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Sha256)->Arg(16)->Arg(64)->Arg(4096);

static void BM_Verify(benchmark::State& state) {
  std::uint64_t nonce = 0;
  for (auto _ : state) benchmark::DoNotOptimize(verify_solution(1, 12, nonce++));
}
BENCHMARK(BM_Verify);

static void BM_SolveMinimal(benchmark::State& state) {
  const auto bits = static_cast<std::uint32_t>(state.range(0));
  std::uint64_t id = 1;
  std::uint64_t hashes = 0;
  for (auto _ : state) {
    const auto n = solve_minimal(id++, bits);
    hashes += n + 1;
    benchmark::DoNotOptimize(n);
  }
  state.counters["hashes/s"] = benchmark::Counter(static_cast<double>(hashes), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_SolveMinimal)->Arg(8)->Arg(12)->Arg(16);
