#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace pushback {

/// Exact non-negative fraction. Threshold comparisons never touch floating point.
struct Ratio {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  /// Decimal thresholds from configuration are fixed to millionths.
  static Ratio from_decimal(double value, std::uint64_t scale = 1'000'000) {
    if (!(value >= 0.0) || !std::isfinite(value)) throw std::invalid_argument("ratio must be a finite non-negative number");
    return Ratio{static_cast<std::uint64_t>(std::llround(value * static_cast<double>(scale))), scale};
  }

  double to_double() const { return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den); }

  bool is_zero() const { return num == 0; }
};

/// Three-way comparison by cross multiplication. A zero denominator compares as zero.
inline int compare(Ratio a, Ratio b) {
  if (a.den == 0) a = Ratio{0, 1};
  if (b.den == 0) b = Ratio{0, 1};
  const auto lhs = static_cast<unsigned __int128>(a.num) * b.den;
  const auto rhs = static_cast<unsigned __int128>(b.num) * a.den;
  return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

inline bool operator==(Ratio a, Ratio b) { return compare(a, b) == 0; }
inline bool operator<(Ratio a, Ratio b) { return compare(a, b) < 0; }
inline bool operator<=(Ratio a, Ratio b) { return compare(a, b) <= 0; }
inline bool operator>(Ratio a, Ratio b) { return compare(a, b) > 0; }
inline bool operator>=(Ratio a, Ratio b) { return compare(a, b) >= 0; }

}  // namespace pushback
