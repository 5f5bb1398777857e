#pragma once

/*
 * xy_model.hpp — ground-state observables of the transverse-field XY chain
 *
 *   H = J Σ [(1+γ) Sx_i Sx_{i+1} + (1-γ) Sy_i Sy_{i+1}] - a Σ Sz_i,
 *
 * parametrised by the anisotropy γ and the field ratio ã = a/J.
 *
 * Infinite chain (φ ∈ [0, π]):
 *
 *   Λ(φ)   = sqrt(γ² sin²φ + (ã - cos φ)²)
 *   G(R)   = (1/π) ∫ [γ sin(Rφ) sin φ - cos φ (cos φ - ã)] / Λ dφ,  R = ±1
 *   Mz     = -(1/π) ∫ (cos φ - ã) / Λ dφ
 *   Cxx    = G(-1),  Cyy = G(+1),  Czz = Mz² - G(+1) G(-1)
 *
 * Finite chain of n spins: Mz_n = -(1/n) Σ_p (cos φ_p - ã) / Λ(φ_p), the
 * Brillouin-zone Riemann sum of the Mz integral.
 */

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include "benford_qpt/errors.hpp"
#include "benford_qpt/quadrature.hpp"
#include "benford_qpt/quantum_state.hpp"

namespace benford_qpt {

struct ModelParams {
  double gamma = 1.0;
  double field_ratio = 0.0;  ///< ã = a/J

  void validate() const {
    if (!std::isfinite(gamma) || !std::isfinite(field_ratio)) {
      throw DomainError("ModelParams: gamma and field_ratio must be finite");
    }
  }
};

enum class ObservableKind { Mz, Cxx, Cyy, Czz, SingleSiteEntropy, LogNegativity };

inline constexpr ObservableKind kAllObservables[] = {
    ObservableKind::Mz,  ObservableKind::Cxx,
    ObservableKind::Cyy, ObservableKind::Czz,
    ObservableKind::SingleSiteEntropy, ObservableKind::LogNegativity};

/// Short name used on the command line and in CSV output.
inline std::string_view to_string(ObservableKind kind) {
  switch (kind) {
    case ObservableKind::Mz: return "mz";
    case ObservableKind::Cxx: return "cxx";
    case ObservableKind::Cyy: return "cyy";
    case ObservableKind::Czz: return "czz";
    case ObservableKind::SingleSiteEntropy: return "entropy";
    case ObservableKind::LogNegativity: return "logneg";
  }
  return "unknown";
}

inline std::optional<ObservableKind> parse_observable(std::string_view name) {
  for (ObservableKind kind : kAllObservables) {
    if (to_string(kind) == name) return kind;
  }
  return std::nullopt;
}

/// Which momenta enter the finite-chain sum.
enum class MomentumSet {
  /// φ_p = (2p - 1)π/n, p = 1..n. Antiperiodic fermions, the even-parity
  /// ground-state sector; no mode sits at φ = 0.
  HalfInteger,
  /// φ_p = 2πp/n, p = 1..n (evaluated as p = 0..n-1, the same set modulo
  /// 2π). Periodic fermions; the φ = 0 mode adds a step
  /// of height 2/n to Mz at ã = 1.
  Integer,
};

struct FiniteChainSpec {
  int n = 10;
  MomentumSet momenta = MomentumSet::HalfInteger;
  /// Sum only φ_p = 2πp/n, p = 1..n/2, with prefactor 1/n (momenta is
  /// ignored). Tends to 1/2 instead of 1 at large field; comparison only.
  bool half_zone_literal = false;
  /// Permit odd n. The full-zone momentum sets are well defined for odd n.
  bool allow_odd = false;

  void validate() const {
    if (n < 4) throw DomainError("FiniteChainSpec: n must be at least 4");
    if (n % 2 != 0 && (!allow_odd || half_zone_literal)) {
      std::ostringstream msg;
      msg << "FiniteChainSpec: n = " << n << " is odd";
      throw DomainError(msg.str());
    }
  }
};

inline double lambda_dispersion(const ModelParams& params, double phi) {
  const double s = params.gamma * std::sin(phi);
  const double c = params.field_ratio - std::cos(phi);
  return std::hypot(s, c);
}

inline double g_integral(int r, const ModelParams& params, const QuadratureConfig& cfg = {}) {
  if (r != 1 && r != -1) throw DomainError("g_integral: R must be +1 or -1");
  params.validate();
  const double gamma = params.gamma;
  const double field = params.field_ratio;
  auto integrand = [&](double phi) {
    const double c = std::cos(phi);
    return (gamma * std::sin(phi * r) * std::sin(phi) - c * (c - field)) /
           lambda_dispersion(params, phi);
  };
  return integrate(integrand, 0.0, std::numbers::pi, cfg) / std::numbers::pi;
}

inline double magnetization_inf(const ModelParams& params, const QuadratureConfig& cfg = {}) {
  params.validate();
  const double field = params.field_ratio;
  auto integrand = [&](double phi) {
    return (std::cos(phi) - field) / lambda_dispersion(params, phi);
  };
  return -integrate(integrand, 0.0, std::numbers::pi, cfg) / std::numbers::pi;
}

struct Correlators {
  double cxx;
  double cyy;
  double czz;
};

inline Correlators correlators(const ModelParams& params, const QuadratureConfig& cfg = {}) {
  const double mz = magnetization_inf(params, cfg);
  const double g_minus = g_integral(-1, params, cfg);
  const double g_plus = g_integral(+1, params, cfg);
  return {g_minus, g_plus, mz * mz - g_plus * g_minus};
}

inline double magnetization_finite(const FiniteChainSpec& spec, const ModelParams& params) {
  spec.validate();
  params.validate();
  const double n = static_cast<double>(spec.n);
  // p = 0 stands in for p = n so that φ = 0 is exact.
  int first = 1;
  int last = spec.n;
  if (spec.half_zone_literal) {
    last = spec.n / 2;
  } else if (spec.momenta == MomentumSet::Integer) {
    first = 0;
    last = spec.n - 1;
  }
  double sum = 0.0;
  for (int p = first; p <= last; ++p) {
    const double k = spec.momenta == MomentumSet::HalfInteger && !spec.half_zone_literal
                         ? 2.0 * p - 1.0
                         : 2.0 * p;
    const double phi = k * std::numbers::pi / n;
    const double lambda = lambda_dispersion(params, phi);
    // A mode with Λ = 0 (γ sinφ = 0 and ã = cos φ) contributes its
    // one-sided limit of zero weight.
    if (lambda > 0.0) sum += (std::cos(phi) - params.field_ratio) / lambda;
  }
  return -sum / n;
}

/// All single- and two-site quantities at one parameter point.
struct ObservableSet {
  double mz;
  double cxx;
  double cyy;
  double czz;
  double entropy;
  double log_negativity;
};

inline ObservableSet evaluate_all(const ModelParams& params, const QuadratureConfig& cfg = {}) {
  const double mz = magnetization_inf(params, cfg);
  const Correlators c = correlators(params, cfg);
  // Quadrature noise may push |mz| past 1 by O(abs_tol).
  const double mz_clamped = std::clamp(mz, -1.0, 1.0);
  const auto state = TwoSiteState::reconstruct(mz_clamped, std::clamp(c.cxx, -1.0, 1.0),
                                               std::clamp(c.cyy, -1.0, 1.0),
                                               std::clamp(c.czz, -1.0, 1.0));
  return {mz, c.cxx, c.cyy, c.czz, single_site_entropy(mz_clamped), log_negativity(state)};
}

inline double evaluate(ObservableKind kind, const ModelParams& params,
                       const QuadratureConfig& cfg = {}) {
  switch (kind) {
    case ObservableKind::Mz: return magnetization_inf(params, cfg);
    case ObservableKind::Cxx: return g_integral(-1, params, cfg);
    case ObservableKind::Cyy: return g_integral(+1, params, cfg);
    case ObservableKind::Czz: return correlators(params, cfg).czz;
    case ObservableKind::SingleSiteEntropy:
      return single_site_entropy(std::clamp(magnetization_inf(params, cfg), -1.0, 1.0));
    case ObservableKind::LogNegativity: return evaluate_all(params, cfg).log_negativity;
  }
  throw DomainError("evaluate: unknown observable");
}

}  // namespace benford_qpt
