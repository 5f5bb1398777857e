#pragma once

/*
 * scanner.hpp — Benford violation parameter on shifting field windows.
 *
 * A window centred at ã' is the open interval (ã' - ε/2, ã' + ε/2). The
 * quantity is evaluated on sample_count fields inside it, shift-scaled within
 * that window and reduced to δ. Sliding the centre by a fixed step gives a
 * δ(ã') curve; the transition is located at the extremum of its derivative
 * with the largest modulus, and accepted when the curve settles on plateaus
 * of different height on either side.
 */

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "benford_qpt/benford.hpp"
#include "benford_qpt/errors.hpp"
#include "benford_qpt/quadrature.hpp"
#include "benford_qpt/xy_model.hpp"

namespace benford_qpt {

/// A scalar quantity as a function of the field ratio ã.
using FieldQuantity = std::function<double(double)>;

struct WindowSpec {
  double width = 0.2;      ///< ε, in units of ã
  int sample_count = 1998;  ///< raw points per window
  double shift = 0.05;      ///< step between window centres

  void validate() const {
    if (!(width > 0.0) || !std::isfinite(width)) throw DomainError("WindowSpec: width must be > 0");
    if (!(shift > 0.0) || !std::isfinite(shift)) throw DomainError("WindowSpec: shift must be > 0");
    if (sample_count < 3) throw DomainError("WindowSpec: sample_count must be at least 3");
  }
};

/// How fields are placed inside a window. Without a seed the grid is uniform
/// and excludes both ends; with a seed the fields are uniform random draws
/// from a generator keyed on (seed, window centre).
struct Sampling {
  std::optional<std::uint64_t> seed;
};

struct ScanPoint {
  double center;
  double delta;
};

struct ScanGap {
  double center;
  std::string reason;
};

struct ScanResult {
  ObservableKind quantity = ObservableKind::Mz;
  double gamma = 1.0;
  std::vector<ScanPoint> points;  ///< ascending centres
  std::vector<ScanGap> gaps;      ///< centres whose window could not be evaluated
};

struct ScanOptions {
  Sampling sampling;
  unsigned threads = 0;  ///< 0 picks std::thread::hardware_concurrency()
};

struct TransitionReport {
  bool detected = false;
  double candidate = std::numeric_limits<double>::quiet_NaN();
  double derivative_extremum = 0.0;
  double plateau_before = std::numeric_limits<double>::quiet_NaN();
  double plateau_after = std::numeric_limits<double>::quiet_NaN();
  bool plateau_distinct = false;
};

struct DetectionOptions {
  double edge_exclusion = 0.3;
  /// Absolute plateau separation required; unset means 10% of the larger
  /// plateau magnitude.
  std::optional<double> plateau_margin;
};

inline std::vector<double> sample_interval(double lo, double hi, int count, const Sampling& sampling,
                                           double key) {
  std::vector<double> fields(static_cast<std::size_t>(count));
  const double width = hi - lo;
  if (!sampling.seed) {
    for (int i = 0; i < count; ++i) {
      fields[static_cast<std::size_t>(i)] = lo + width * (i + 1) / (count + 1);
    }
    return fields;
  }
  std::seed_seq seq{static_cast<std::uint32_t>(*sampling.seed),
                    static_cast<std::uint32_t>(*sampling.seed >> 32),
                    static_cast<std::uint32_t>(std::bit_cast<std::uint64_t>(key)),
                    static_cast<std::uint32_t>(std::bit_cast<std::uint64_t>(key) >> 32)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> uniform(lo, hi);
  for (auto& f : fields) {
    do {
      f = uniform(rng);
    } while (!(f > lo && f < hi));
  }
  std::sort(fields.begin(), fields.end());
  return fields;
}

/// Field values inside (center - width/2, center + width/2).
inline std::vector<double> sample_window(double center, const WindowSpec& spec,
                                         const Sampling& sampling = {}) {
  spec.validate();
  const double lo = center - spec.width / 2.0;
  const double hi = center + spec.width / 2.0;
  if (!std::isfinite(center) || lo < -1e-12) {
    std::ostringstream msg;
    msg.precision(12);
    msg << "sample_window: window around " << center << " extends below zero";
    throw DomainError(msg.str());
  }
  return sample_interval(std::max(lo, 0.0), hi, spec.sample_count, sampling, center);
}

inline FieldQuantity observable_quantity(ObservableKind kind, double gamma,
                                         const QuadratureConfig& cfg = {}) {
  return [=](double field) { return evaluate(kind, ModelParams{gamma, field}, cfg); };
}

inline FieldQuantity finite_chain_quantity(const FiniteChainSpec& chain, double gamma) {
  chain.validate();
  return [=](double field) { return magnetization_finite(chain, ModelParams{gamma, field}); };
}

namespace detail {

inline std::vector<double> evaluate_on(const FieldQuantity& quantity,
                                       const std::vector<double>& fields) {
  std::vector<double> values;
  values.reserve(fields.size());
  for (double f : fields) {
    if (f < 0.0) throw DomainError("negative field ratio");
    values.push_back(quantity(f));
  }
  return values;
}

}  // namespace detail

inline double window_delta(const FieldQuantity& quantity, double center, const WindowSpec& spec,
                           const Sampling& sampling = {}) {
  const auto values = detail::evaluate_on(quantity, sample_window(center, spec, sampling));
  return analyze_series(values).delta;
}

inline double window_delta(ObservableKind kind, double gamma, double center,
                           const WindowSpec& spec, const QuadratureConfig& cfg = {},
                           const Sampling& sampling = {}) {
  return window_delta(observable_quantity(kind, gamma, cfg), center, spec, sampling);
}

/// Window centres lo + k·shift that do not exceed hi.
inline std::vector<double> scan_centers(double lo, double hi, double shift) {
  std::vector<double> centers;
  if (!(hi >= lo)) return centers;
  // Relative slack so that e.g. [0.2, 2.0] in steps of 0.05 keeps 2.0.
  const auto steps = static_cast<long>(std::floor((hi - lo) / shift * (1.0 + 1e-12) + 1e-9));
  centers.reserve(static_cast<std::size_t>(steps + 1));
  for (long k = 0; k <= steps; ++k) centers.push_back(lo + static_cast<double>(k) * shift);
  return centers;
}

/// Computes δ for every window centre in [lo, hi]. Windows that cannot be
/// evaluated are recorded in ScanResult::gaps. Runs windows concurrently;
/// the result does not depend on the thread count.
inline ScanResult scan(const FieldQuantity& quantity, double lo, double hi,
                       const WindowSpec& spec, const ScanOptions& options = {},
                       ObservableKind kind = ObservableKind::Mz, double gamma = 1.0) {
  spec.validate();
  const auto centers = scan_centers(lo, hi, spec.shift);

  struct Slot {
    std::optional<double> delta;
    std::string error;
  };
  std::vector<Slot> slots(centers.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < centers.size(); i = next++) {
      try {
        slots[i].delta = window_delta(quantity, centers[i], spec, options.sampling);
      } catch (const std::exception& e) {
        slots[i].error = e.what();
      }
    }
  };

  unsigned threads = options.threads ? options.threads : std::thread::hardware_concurrency();
  threads = std::clamp<unsigned>(threads, 1u, static_cast<unsigned>(std::max<std::size_t>(centers.size(), 1)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  ScanResult result;
  result.quantity = kind;
  result.gamma = gamma;
  for (std::size_t i = 0; i < centers.size(); ++i) {
    if (slots[i].delta) {
      result.points.push_back({centers[i], *slots[i].delta});
    } else {
      result.gaps.push_back({centers[i], slots[i].error});
    }
  }
  return result;
}

inline ScanResult scan(ObservableKind kind, double gamma, double lo, double hi,
                       const WindowSpec& spec, const QuadratureConfig& cfg = {},
                       const ScanOptions& options = {}) {
  return scan(observable_quantity(kind, gamma, cfg), lo, hi, spec, options, kind, gamma);
}

/// Digit histogram of the quantity sampled on the open interval (lo, hi).
inline DigitHistogram window_histogram(const FieldQuantity& quantity, double lo, double hi,
                                       int sample_count, const Sampling& sampling = {}) {
  if (!(lo >= 0.0) || !(hi > lo) || !std::isfinite(hi)) {
    throw DomainError("window_histogram: interval must satisfy 0 <= lo < hi");
  }
  if (sample_count < 3) throw DomainError("window_histogram: sample_count must be at least 3");
  const auto fields = sample_interval(lo, hi, sample_count, sampling, 0.5 * (lo + hi));
  return histogram(shift_scale(detail::evaluate_on(quantity, fields)));
}

inline DigitHistogram window_histogram(ObservableKind kind, double gamma, double lo, double hi,
                                       int sample_count, const QuadratureConfig& cfg = {}) {
  return window_histogram(observable_quantity(kind, gamma, cfg), lo, hi, sample_count);
}

/// Derivative dδ/dã at each point: centred differences inside, one-sided at
/// the ends.
inline std::vector<double> delta_derivative(const std::vector<ScanPoint>& points) {
  const std::size_t n = points.size();
  std::vector<double> d(n, 0.0);
  if (n < 2) return d;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t a = i == 0 ? 0 : i - 1;
    const std::size_t b = i + 1 == n ? n - 1 : i + 1;
    d[i] = (points[b].delta - points[a].delta) / (points[b].center - points[a].center);
  }
  return d;
}

inline TransitionReport detect_transition(const ScanResult& result,
                                          const DetectionOptions& options = {}) {
  const auto& pts = result.points;
  if (pts.size() < 5) throw DomainError("detect_transition: need at least 5 scan points");

  TransitionReport report;
  const auto derivative = delta_derivative(pts);
  std::size_t best = 0;
  for (std::size_t i = 1; i < derivative.size(); ++i) {
    if (std::abs(derivative[i]) > std::abs(derivative[best])) best = i;
  }
  if (derivative[best] == 0.0) return report;

  report.detected = true;
  report.candidate = pts[best].center;
  report.derivative_extremum = derivative[best];

  double sum_before = 0.0, sum_after = 0.0;
  int n_before = 0, n_after = 0;
  for (const auto& p : pts) {
    if (p.center < report.candidate - options.edge_exclusion) {
      sum_before += p.delta;
      ++n_before;
    } else if (p.center > report.candidate + options.edge_exclusion) {
      sum_after += p.delta;
      ++n_after;
    }
  }
  if (n_before > 0) report.plateau_before = sum_before / n_before;
  if (n_after > 0) report.plateau_after = sum_after / n_after;
  if (n_before > 0 && n_after > 0) {
    const double margin = options.plateau_margin.value_or(
        0.1 * std::max(std::abs(report.plateau_before), std::abs(report.plateau_after)));
    report.plateau_distinct = std::abs(report.plateau_before - report.plateau_after) > margin;
  }
  return report;
}

/// Peak-to-trough δ over the points with |centre - around| <= half_width.
inline double excursion_amplitude(const ScanResult& result, double around, double half_width) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& p : result.points) {
    if (std::abs(p.center - around) <= half_width + 1e-12) {
      lo = std::min(lo, p.delta);
      hi = std::max(hi, p.delta);
    }
  }
  return hi >= lo ? hi - lo : 0.0;
}

/// Mean δ over centres in [lo, hi]; NaN when none fall inside.
inline double mean_delta(const ScanResult& result, double lo, double hi) {
  double sum = 0.0;
  int n = 0;
  for (const auto& p : result.points) {
    if (p.center >= lo - 1e-9 && p.center <= hi + 1e-9) {
      sum += p.delta;
      ++n;
    }
  }
  return n ? sum / n : std::numeric_limits<double>::quiet_NaN();
}

}  // namespace benford_qpt
