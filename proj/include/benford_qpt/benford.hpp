#pragma once

/*
 * benford.hpp — first-significant-digit statistics.
 *
 *   P_D = log10(1 + 1/D)                          D = 1..9
 *   Q_B = (Q - Q_min) / (Q_max - Q_min)           points mapping to 0 or 1 dropped
 *   δ   = Σ_D |O_D - E_D| / E_D,  E_D = N P_D     O_D, E_D as counts
 */

#include <array>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <sstream>
#include <system_error>
#include <vector>

#include "benford_qpt/errors.hpp"

namespace benford_qpt {

inline double benford_pmf(int digit) {
  if (digit < 1 || digit > 9) {
    std::ostringstream msg;
    msg << "benford_pmf: digit " << digit << " is outside 1..9";
    throw DomainError(msg.str());
  }
  return std::log10(1.0 + 1.0 / digit);
}

/// Values in the open unit interval, ready for digit extraction.
class BenfordSample {
 public:
  BenfordSample() = default;

  explicit BenfordSample(std::vector<double> values) : values_(std::move(values)) {
    for (double v : values_) {
      if (!(v > 0.0 && v < 1.0)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "BenfordSample: value " << v << " is outside (0, 1)";
        throw DomainError(msg.str());
      }
    }
  }

  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }

 private:
  std::vector<double> values_;
};

/// Maps raw values affinely onto [0, 1] and drops the points landing on 0 or 1.
inline BenfordSample shift_scale(std::span<const double> raw) {
  if (raw.size() < 3) throw DomainError("shift_scale: need at least 3 values");
  double lo = raw[0];
  double hi = raw[0];
  for (double q : raw) {
    if (!std::isfinite(q)) throw DomainError("shift_scale: non-finite value");
    lo = std::min(lo, q);
    hi = std::max(hi, q);
  }
  if (!(hi > lo)) throw DegenerateSampleError("shift_scale: series is constant");

  const double span = hi - lo;
  std::vector<double> scaled;
  scaled.reserve(raw.size());
  for (double q : raw) {
    const double v = (q - lo) / span;
    if (v > 0.0 && v < 1.0) scaled.push_back(v);
  }
  return BenfordSample(std::move(scaled));
}

namespace detail {

// Leading digit of the shortest decimal string that round-trips to x.
inline int leading_decimal_digit(double x) {
  std::array<char, 64> buf{};
  const auto [end, ec] =
      std::to_chars(buf.data(), buf.data() + buf.size(), x, std::chars_format::scientific);
  if (ec != std::errc{}) throw DomainError("first_significant_digit: formatting failed");
  return buf[0] - '0';
}

}  // namespace detail

/// First nonzero decimal digit of x ∈ (0, 1).
///
/// Uses D = floor(x · 10^-floor(log10 x)); when the scaled mantissa falls
/// within 1e-12 of an integer the digit is re-read from the shortest
/// round-trip decimal form of x instead.
inline int first_significant_digit(double x) {
  if (!(x > 0.0 && x < 1.0)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "first_significant_digit: " << x << " is outside (0, 1)";
    throw DomainError(msg.str());
  }
  const double exponent = std::floor(std::log10(x));
  const double mantissa = x * std::pow(10.0, -exponent);
  const double digit = std::floor(mantissa);
  const double frac = mantissa - digit;
  if (digit < 1.0 || digit > 9.0 || frac < 1e-12 || frac > 1.0 - 1e-12) {
    return detail::leading_decimal_digit(x);
  }
  return static_cast<int>(digit);
}

struct DigitHistogram {
  std::array<std::uint64_t, 9> counts{};  ///< counts[D - 1] for digit D
  std::uint64_t sample_size = 0;

  std::uint64_t count(int digit) const { return counts.at(static_cast<std::size_t>(digit - 1)); }

  double relative_frequency(int digit) const {
    return sample_size == 0 ? 0.0
                            : static_cast<double>(count(digit)) / static_cast<double>(sample_size);
  }

  friend bool operator==(const DigitHistogram&, const DigitHistogram&) = default;
};

inline DigitHistogram histogram(const BenfordSample& sample) {
  DigitHistogram h;
  for (double v : sample.values()) ++h.counts[static_cast<std::size_t>(first_significant_digit(v) - 1)];
  h.sample_size = sample.size();
  return h;
}

inline double violation_parameter(const DigitHistogram& hist) {
  if (hist.sample_size == 0) throw EmptyHistogramError("violation_parameter: empty histogram");
  const double n = static_cast<double>(hist.sample_size);
  double delta = 0.0;
  for (int d = 1; d <= 9; ++d) {
    const double expected = n * benford_pmf(d);
    delta += std::abs(static_cast<double>(hist.count(d)) - expected) / expected;
  }
  return delta;
}

struct SeriesAnalysis {
  DigitHistogram histogram;
  double delta;
};

/// shift_scale → histogram → violation_parameter.
inline SeriesAnalysis analyze_series(std::span<const double> raw) {
  const DigitHistogram h = histogram(shift_scale(raw));
  return {h, violation_parameter(h)};
}

/// Total-variation distance between the digit distributions of two histograms.
inline double total_variation(const DigitHistogram& a, const DigitHistogram& b) {
  double tv = 0.0;
  for (int d = 1; d <= 9; ++d) tv += std::abs(a.relative_frequency(d) - b.relative_frequency(d));
  return 0.5 * tv;
}

}  // namespace benford_qpt
