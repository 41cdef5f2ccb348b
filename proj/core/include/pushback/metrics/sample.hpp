#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "pushback/engine/sim_time.hpp"
#include "pushback/net/node.hpp"

namespace pushback::metrics {

/// Rate in thousandths of a unit per second, rounded half up.
struct MilliRate {
  std::uint64_t milli = 0;

  static MilliRate per_second(std::uint64_t count, SimTime interval);
  /// At most three decimals, trailing zeros trimmed: "500", "33.333", "0.5".
  std::string format() const;
  double value() const { return static_cast<double>(milli) / 1000.0; }

  auto operator<=>(const MilliRate&) const = default;
};

struct SampleRow {
  SimTime time;
  MilliRate legit_pps;
  MilliRate attack_pps;
  MilliRate victim_in_bps_legit;
  MilliRate victim_in_bps_attack;
  std::uint64_t backlog_occupancy = 0;
  MilliRate goodput_cps;
  std::uint64_t active_blocks = 0;
  MilliRate rate_limited_pps;
  std::uint64_t puzzles_issued = 0;
  std::uint64_t puzzles_solved = 0;
  std::uint64_t puzzles_failed = 0;
  std::uint32_t difficulty_bits = 0;
};

/// Gauges read from the simulation at sample time.
struct Snapshot {
  std::uint64_t backlog_occupancy = 0;
  std::uint64_t active_blocks = 0;
  std::uint64_t puzzles_issued = 0;
  std::uint64_t puzzles_solved = 0;
  std::uint64_t puzzles_failed = 0;
  std::uint32_t difficulty_bits = 0;
};

struct ClassTotals {
  std::uint64_t packets = 0;
  std::uint64_t bytes = 0;
};

/// Accumulates per-interval counters between samples.
class MetricsCollector {
 public:
  explicit MetricsCollector(SimTime interval);

  void note_emitted(net::HostRole role);
  void note_victim_arrival(net::HostRole role, std::uint32_t bytes);
  void note_completion();
  void note_rate_limited();

  /// Closes the interval ending at `now` and appends the row.
  const SampleRow& sample(SimTime now, const Snapshot& gauges);

  SimTime interval() const { return interval_; }
  const std::vector<SampleRow>& rows() const { return rows_; }
  const ClassTotals& victim_totals(net::HostRole role) const { return victim_totals_[index(role)]; }
  std::uint64_t emitted_total(net::HostRole role) const { return emitted_totals_[index(role)]; }

 private:
  static std::size_t index(net::HostRole role) { return role == net::HostRole::Attacker ? 1 : 0; }

  SimTime interval_;
  SimTime last_sample_{};
  std::array<std::uint64_t, 2> emitted_{};
  std::array<std::uint64_t, 2> victim_bytes_{};
  std::uint64_t completions_ = 0;
  std::uint64_t rate_limited_ = 0;
  std::array<ClassTotals, 2> victim_totals_{};
  std::array<std::uint64_t, 2> emitted_totals_{};
  std::vector<SampleRow> rows_;
};

/// Column names in output order.
extern const char* const kCsvHeader;

/// Header plus one line per row, '\n' separated. Returns bytes written.
std::size_t write_csv(const std::vector<SampleRow>& rows, std::ostream& out);

std::string format_time_s(SimTime t);

}  // namespace pushback::metrics
