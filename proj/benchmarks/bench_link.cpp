#include <benchmark/benchmark.h>

#include "pushback/net/link_queue.hpp"

using namespace pushback;
using namespace pushback::net;

// Enqueue into a saturated FIFO, draining one per insert; mixes drops and admits.
static void BM_LinkSaturated(benchmark::State& state) {
  LinkQueue link(LinkSpec{NodeId{0}, NodeId{1}}, 4, SimTime::millis(100), 10);
  PacketFactory factory;
  SimTime now{};
  for (auto _ : state) {
    for (int i = 0; i < 4; ++i) {
      benchmark::DoNotOptimize(link.enqueue(Direction::AtoB,
                                            factory.make(PacketKind::Syn, NodeId{0}, NodeId{1}, 0, now), now));
    }
    now = link.busy_until(Direction::AtoB) > now ? now + SimTime::micros(32) : now;
    if (link.fifo_length(Direction::AtoB) > 0) {
      auto p = link.complete_transmit(Direction::AtoB);
      link.note_delivered(Direction::AtoB, p);
    }
  }
  state.SetItemsProcessed(state.iterations() * 4);
}
BENCHMARK(BM_LinkSaturated);
