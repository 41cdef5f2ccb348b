#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pushback/engine/error.hpp"
#include "pushback/engine/node_id.hpp"
#include "pushback/engine/prng.hpp"
#include "pushback/engine/sim_time.hpp"

namespace pushback {

using EventId = std::uint64_t;

template <class Payload>
struct Event {
  SimTime fire_at;
  std::uint64_t seq = 0;
  NodeId target;
  Payload payload;
};

/// Discrete-event core: virtual clock, (fire_at, seq)-ordered queue and the shared PRNG.
///
/// Handlers run to completion one at a time and may schedule further events,
/// including at the current instant. Scheduling into the past throws
/// SimulationFault.
template <class Payload>
class Engine {
 public:
  explicit Engine(std::uint64_t seed = 0) : prng_(seed) {}

  SimTime now() const { return now_; }
  SplitMix64& prng() { return prng_; }
  std::size_t pending() const { return heap_.size(); }
  std::uint64_t processed() const { return processed_; }

  EventId schedule(SimTime fire_at, NodeId target, Payload payload) {
    if (fire_at < now_) {
      throw SimulationFault("event scheduled in the past: fire_at=" + std::to_string(fire_at.ns) +
                            " now=" + std::to_string(now_.ns));
    }
    const std::uint64_t seq = next_seq_++;
    heap_.push_back(Event<Payload>{fire_at, seq, target, std::move(payload)});
    std::push_heap(heap_.begin(), heap_.end(), Later{});
    return seq;
  }

  /// Processes every event with fire_at <= t_end, then parks the clock at t_end.
  /// The clock never moves backwards; a t_end earlier than now() processes nothing.
  template <class Handler>
  std::uint64_t run_until(SimTime t_end, Handler&& handler) {
    if (t_end < now_) return 0;
    std::uint64_t count = 0;
    while (!heap_.empty() && heap_.front().fire_at <= t_end) {
      std::pop_heap(heap_.begin(), heap_.end(), Later{});
      Event<Payload> ev = std::move(heap_.back());
      heap_.pop_back();
      now_ = ev.fire_at;
      mix(ev);
      ++count;
      ++processed_;
      handler(ev);
    }
    now_ = t_end;
    return count;
  }

  /// FNV-1a over the processed (fire_at, seq, target) stream.
  std::uint64_t digest() const { return digest_; }

 private:
  struct Later {
    bool operator()(const Event<Payload>& a, const Event<Payload>& b) const {
      if (a.fire_at != b.fire_at) return a.fire_at > b.fire_at;
      return a.seq > b.seq;
    }
  };

  void mix(const Event<Payload>& ev) {
    auto feed = [this](std::uint64_t v, int bytes) {
      for (int i = 0; i < bytes; ++i) {
        digest_ ^= (v >> (8 * i)) & 0xFFU;
        digest_ *= 0x100000001B3ULL;
      }
    };
    feed(ev.fire_at.ns, 8);
    feed(ev.seq, 8);
    feed(ev.target.index, 4);
  }

  SimTime now_{};
  std::uint64_t next_seq_ = 0;
  std::uint64_t processed_ = 0;
  std::uint64_t digest_ = 0xCBF29CE484222325ULL;
  std::vector<Event<Payload>> heap_;
  SplitMix64 prng_;
};

}  // namespace pushback
