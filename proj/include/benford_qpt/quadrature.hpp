#pragma once

/*
 * quadrature.hpp — globally adaptive Gauss–Kronrod (7/15) integration.
 *
 * The interval with the largest error estimate is bisected until the summed
 * error estimate drops below abs_tol. The error estimate of a panel is
 * |K15 − G7|, which is pessimistic for smooth integrands; the returned value
 * is the K15 sum.
 *
 * Evaluation order is fixed, so identical inputs give bit-identical results.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <sstream>
#include <vector>

#include "benford_qpt/errors.hpp"

namespace benford_qpt {

struct QuadratureConfig {
  double abs_tol = 1e-10;
  int max_subdivisions = 60;

  void validate() const {
    if (!(abs_tol > 0.0) || !std::isfinite(abs_tol)) {
      throw DomainError("quadrature: abs_tol must be positive and finite");
    }
    if (max_subdivisions < 1) {
      throw DomainError("quadrature: max_subdivisions must be at least 1");
    }
  }
};

namespace detail {

// Kronrod abscissae on [-1, 1], nonnegative half; odd indices are the Gauss nodes.
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double lower;
  double upper;
  double value;
  double error;

  // Orders by error; among equal errors the leftmost panel is the largest.
  friend bool operator<(const Panel& a, const Panel& b) {
    if (a.error != b.error) return a.error < b.error;
    return a.lower > b.lower;
  }
};

template <class F>
Panel gauss_kronrod_15(F& f, double lower, double upper) {
  const double center = 0.5 * (lower + upper);
  const double half = 0.5 * (upper - lower);

  const double f_center = f(center);
  double kronrod = f_center * kKronrodWeights[7];
  double gauss = f_center * kGaussWeights[3];

  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    const double sum = f(center - dx) + f(center + dx);
    kronrod += kKronrodWeights[j] * sum;
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * sum;
  }
  return Panel{lower, upper, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace detail

/// Integrates f over [lower, upper] to an absolute accuracy of cfg.abs_tol.
///
/// Throws AccuracyError (carrying the best estimate) when more than
/// cfg.max_subdivisions panels would be needed, and DomainError when the
/// bounds are reversed or an evaluation is not finite.
template <class F>
  requires std::invocable<F&, double>
double integrate(F&& f, double lower, double upper, const QuadratureConfig& cfg = {}) {
  cfg.validate();
  if (!(lower <= upper) || !std::isfinite(lower) || !std::isfinite(upper)) {
    throw DomainError("integrate: bounds must be finite with lower <= upper");
  }
  if (lower == upper) return 0.0;

  auto checked = [&f](double x) {
    const double y = static_cast<double>(f(x));
    if (!std::isfinite(y)) {
      std::ostringstream msg;
      msg << "integrate: integrand is not finite at x = " << x;
      throw DomainError(msg.str());
    }
    return y;
  };

  std::vector<detail::Panel> panels;
  panels.reserve(static_cast<std::size_t>(cfg.max_subdivisions));
  panels.push_back(detail::gauss_kronrod_15(checked, lower, upper));
  double total = panels.front().value;
  double error = panels.front().error;

  while (error > cfg.abs_tol) {
    if (static_cast<int>(panels.size()) >= cfg.max_subdivisions) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "integrate: tolerance " << cfg.abs_tol << " not met with "
          << cfg.max_subdivisions << " subdivisions (estimate " << total
          << ", error estimate " << error << ")";
      throw AccuracyError(msg.str(), total, error);
    }
    const auto worst = std::max_element(panels.begin(), panels.end());
    const double mid = 0.5 * (worst->lower + worst->upper);
    const detail::Panel right = detail::gauss_kronrod_15(checked, mid, worst->upper);
    *worst = detail::gauss_kronrod_15(checked, worst->lower, mid);
    panels.push_back(right);

    // Re-summed in storage order.
    total = 0.0;
    error = 0.0;
    for (const auto& p : panels) {
      total += p.value;
      error += p.error;
    }
  }
  return total;
}

}  // namespace benford_qpt
