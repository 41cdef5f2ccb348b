#include "pushback/metrics/sample.hpp"

#include <ostream>
#include <stdexcept>

namespace pushback::metrics {

const char* const kCsvHeader =
    "time_s,legit_pps,attack_pps,victim_in_bps_legit,victim_in_bps_attack,backlog_occupancy,goodput_cps,"
    "active_blocks,rate_limited_pps,puzzles_issued,puzzles_solved,puzzles_failed,difficulty_bits";

MilliRate MilliRate::per_second(std::uint64_t count, SimTime interval) {
  if (interval.ns == 0) return {};
  // count * 1000 * 1e9 / interval, rounded half up.
  const auto scaled = static_cast<unsigned __int128>(count) * 1'000'000'000'000ULL;
  const auto rounded = (scaled * 2 + interval.ns) / (static_cast<unsigned __int128>(interval.ns) * 2);
  return MilliRate{static_cast<std::uint64_t>(rounded)};
}

std::string MilliRate::format() const {
  std::string out = std::to_string(milli / 1000);
  std::uint64_t frac = milli % 1000;
  if (frac == 0) return out;
  std::string digits = std::to_string(frac);
  digits.insert(0, 3 - digits.size(), '0');
  while (digits.back() == '0') digits.pop_back();
  return out + "." + digits;
}

std::string format_time_s(SimTime t) {
  const std::uint64_t ms = t.ns / 1'000'000ULL;
  std::string frac = std::to_string(ms % 1000);
  frac.insert(0, 3 - frac.size(), '0');
  return std::to_string(ms / 1000) + "." + frac;
}

MetricsCollector::MetricsCollector(SimTime interval) : interval_(interval) {
  if (interval.ns == 0) throw std::invalid_argument("sample interval must be positive");
}

void MetricsCollector::note_emitted(net::HostRole role) {
  ++emitted_[index(role)];
  ++emitted_totals_[index(role)];
}

void MetricsCollector::note_victim_arrival(net::HostRole role, std::uint32_t bytes) {
  victim_bytes_[index(role)] += bytes;
  ++victim_totals_[index(role)].packets;
  victim_totals_[index(role)].bytes += bytes;
}

void MetricsCollector::note_completion() { ++completions_; }

void MetricsCollector::note_rate_limited() { ++rate_limited_; }

const SampleRow& MetricsCollector::sample(SimTime now, const Snapshot& gauges) {
  const SimTime span = now - last_sample_;
  SampleRow row;
  row.time = now;
  row.legit_pps = MilliRate::per_second(emitted_[0], span);
  row.attack_pps = MilliRate::per_second(emitted_[1], span);
  row.victim_in_bps_legit = MilliRate::per_second(victim_bytes_[0] * 8, span);
  row.victim_in_bps_attack = MilliRate::per_second(victim_bytes_[1] * 8, span);
  row.backlog_occupancy = gauges.backlog_occupancy;
  row.goodput_cps = MilliRate::per_second(completions_, span);
  row.active_blocks = gauges.active_blocks;
  row.rate_limited_pps = MilliRate::per_second(rate_limited_, span);
  row.puzzles_issued = gauges.puzzles_issued;
  row.puzzles_solved = gauges.puzzles_solved;
  row.puzzles_failed = gauges.puzzles_failed;
  row.difficulty_bits = gauges.difficulty_bits;

  emitted_ = {};
  victim_bytes_ = {};
  completions_ = 0;
  rate_limited_ = 0;
  last_sample_ = now;
  rows_.push_back(row);
  return rows_.back();
}

std::size_t write_csv(const std::vector<SampleRow>& rows, std::ostream& out) {
  std::size_t bytes = 0;
  auto line = [&](const std::string& s) {
    out << s << '\n';
    bytes += s.size() + 1;
  };
  line(kCsvHeader);
  for (const SampleRow& r : rows) {
    std::string s = format_time_s(r.time);
    for (const std::string& field :
         {r.legit_pps.format(), r.attack_pps.format(), r.victim_in_bps_legit.format(),
          r.victim_in_bps_attack.format(), std::to_string(r.backlog_occupancy), r.goodput_cps.format(),
          std::to_string(r.active_blocks), r.rate_limited_pps.format(), std::to_string(r.puzzles_issued),
          std::to_string(r.puzzles_solved), std::to_string(r.puzzles_failed), std::to_string(r.difficulty_bits)}) {
      s += ',';
      s += field;
    }
    line(s);
  }
  if (!out) throw std::runtime_error("failed writing CSV output");
  return bytes;
}

}  // namespace pushback::metrics
