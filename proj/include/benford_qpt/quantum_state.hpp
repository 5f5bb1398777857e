#pragma once

/*
 * quantum_state.hpp — nearest-neighbour two-site state of the XY chain.
 *
 * Translation invariance and the global phase-flip symmetry restrict the
 * reduced state to the X form
 *
 *   rho = 1/4 [ I⊗I + mz (σz⊗I + I⊗σz) + Σ_α c_αα σα⊗σα ],
 *
 * whose nonzero entries (basis ↑↑, ↑↓, ↓↑, ↓↓) sit on the diagonal and
 * anti-diagonal. Both rho and its partial transpose split into two 2×2
 * blocks, so every spectrum here is closed form.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "benford_qpt/errors.hpp"

namespace benford_qpt {

/// Smallest eigenvalue tolerated when reconstructing a state.
inline constexpr double kPhysicalityTolerance = 1e-9;

/// Eigenvalues of the partially transposed two-site operator, ascending.
struct PtSpectrum {
  std::array<double, 4> eigenvalues{};

  double sum() const {
    return eigenvalues[0] + eigenvalues[1] + eigenvalues[2] + eigenvalues[3];
  }
};

class TwoSiteState {
 public:
  /// Builds the state from its four moments.
  ///
  /// Throws InvalidMomentsError when a moment lies outside [-1, 1] or the
  /// resulting operator has an eigenvalue below -kPhysicalityTolerance.
  static TwoSiteState reconstruct(double mz, double cxx, double cyy, double czz) {
    for (double m : {mz, cxx, cyy, czz}) {
      if (!std::isfinite(m) || std::abs(m) > 1.0 + kPhysicalityTolerance) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "reconstruct: moment " << m << " is outside [-1, 1]";
        throw InvalidMomentsError(msg.str());
      }
    }
    TwoSiteState state(mz, cxx, cyy, czz);
    const auto spectrum = state.density_spectrum();
    if (spectrum[0] < -kPhysicalityTolerance) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "reconstruct: moments (" << mz << ", " << cxx << ", " << cyy << ", "
          << czz << ") give negative eigenvalue " << spectrum[0];
      throw InvalidMomentsError(msg.str());
    }
    return state;
  }

  double mz() const { return mz_; }
  double cxx() const { return cxx_; }
  double cyy() const { return cyy_; }
  double czz() const { return czz_; }

  /// Eigenvalues of rho itself, ascending.
  std::array<double, 4> density_spectrum() const {
    const double parallel = std::hypot(mz_ / 2.0, (cxx_ - cyy_) / 4.0);
    const double antiparallel = std::abs(cxx_ + cyy_) / 4.0;
    std::array<double, 4> ev = {(1.0 + czz_) / 4.0 - parallel, (1.0 + czz_) / 4.0 + parallel,
                                (1.0 - czz_) / 4.0 - antiparallel,
                                (1.0 - czz_) / 4.0 + antiparallel};
    std::sort(ev.begin(), ev.end());
    return ev;
  }

 private:
  TwoSiteState(double mz, double cxx, double cyy, double czz)
      : mz_(mz), cxx_(cxx), cyy_(cyy), czz_(czz) {}

  double mz_;
  double cxx_;
  double cyy_;
  double czz_;
};

/// Partial transposition on the first site swaps the anti-diagonal
/// couplings of the two blocks.
inline PtSpectrum pt_spectrum(const TwoSiteState& state) {
  const double parallel = std::hypot(state.mz() / 2.0, (state.cxx() + state.cyy()) / 4.0);
  const double antiparallel = std::abs(state.cxx() - state.cyy()) / 4.0;
  PtSpectrum out;
  out.eigenvalues = {(1.0 + state.czz()) / 4.0 - parallel, (1.0 + state.czz()) / 4.0 + parallel,
                     (1.0 - state.czz()) / 4.0 - antiparallel,
                     (1.0 - state.czz()) / 4.0 + antiparallel};
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end());
  return out;
}

/// Absolute value of the sum of the negative partial-transpose eigenvalues.
inline double negativity(const TwoSiteState& state) {
  double total = 0.0;
  for (double ev : pt_spectrum(state).eigenvalues) total += std::max(0.0, -ev);
  return total;
}

/// log2(2N + 1).
inline double log_negativity(const TwoSiteState& state) {
  return std::log2(2.0 * negativity(state) + 1.0);
}

/// Von Neumann entropy in bits of the single-site state (I + mz σz)/2.
inline double single_site_entropy(double mz) {
  if (!std::isfinite(mz) || std::abs(mz) > 1.0) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "single_site_entropy: |mz| = " << std::abs(mz) << " exceeds 1";
    throw DomainError(msg.str());
  }
  double entropy = 0.0;
  for (double p : {(1.0 + mz) / 2.0, (1.0 - mz) / 2.0}) {
    if (p > 0.0) entropy -= p * std::log2(p);
  }
  return entropy;
}

}  // namespace benford_qpt
