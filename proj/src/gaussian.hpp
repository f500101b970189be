/**
 * Gaussian states of the light-atoms system.
 *
 * Conventions: canonical pairs (y, q) obey [y, q] = i and the vacuum has
 * variance 1/2 in each quadrature. A coherent state with mean photon
 * number n and phase phi has mean_y = sqrt(2 n) cos(phi) and
 * mean_q = sqrt(2 n) sin(phi).
 *
 * The joint system is tracked in a fixed 10-variable layout:
 *
 *   [ Y, Q,                    input sideband mode (the state to transfer)
 *     y_c, y_s, q_c, q_s,      cos/sin components of the bus pulse
 *     v_c, v_s,                back-action vacuum of the first-order
 *                              temporal mode (q-type; conjugates untracked)
 *     X_A, P_A ]               collective atomic spin quadratures
 */
#pragma once

#include <Eigen/Dense>

#include <utility>

#include "rng.hpp"

namespace qtel {

inline constexpr double kVacuumVar = 0.5;

using Vec10 = Eigen::Matrix<double, 10, 1>;
using Mat10 = Eigen::Matrix<double, 10, 10>;

/// Positions of the tracked variables in SystemState vectors/matrices.
enum StateIndex : int {
  kY = 0,
  kQ = 1,
  kYc = 2,
  kYs = 3,
  kQc = 4,
  kQs = 5,
  kVc = 6,
  kVs = 7,
  kXa = 8,
  kPa = 9,
  kNumVars = 10,
};

/// Single bosonic mode with uncorrelated quadratures.
struct ModeState {
  double mean_y = 0.0;
  double mean_q = 0.0;
  double var_y = kVacuumVar;
  double var_q = kVacuumVar;
};

ModeState make_vacuum();

/// Coherent state of mean photon number `n_bar` (>= 0) and phase `phase`.
ModeState make_coherent(double n_bar, double phase);

/// Squeezed vacuum; `squeeze_db` > 0 squeezes y and antisqueezes q by the
/// same factor 10^(squeeze_db/10). Negative values swap the roles.
ModeState make_squeezed_vacuum(double squeeze_db);

/// Mean photon number (mean_y^2 + mean_q^2 + var_y + var_q - 1) / 2.
double mean_photon_number(const ModeState& state);

/// Overlap fidelity of two Gaussian modes with uncorrelated quadratures,
///   F = exp(-dy^2/(2 Sy) - dq^2/(2 Sq)) / sqrt(Sy Sq),
/// with Sy = var_y(a) + var_y(b), Sq likewise. Exact state fidelity when
/// at least one of the states is pure (both are, for all states built by
/// the constructors above).
double overlap_fidelity(const ModeState& a, const ModeState& b);

/// Gaussian state of the full 10-variable system.
struct SystemState {
  Vec10 mean = Vec10::Zero();
  Mat10 cov = Mat10::Zero();

  /// State before the entangling pass: `input` occupies (Y, Q), `atoms`
  /// occupies (X_A, P_A), every bus variable is vacuum.
  static SystemState initial(const ModeState& input, const ModeState& atoms);
};

/// One draw from a single mode: (y, q).
std::pair<double, double> sample(const ModeState& state, Rng& rng);

/// One draw from the joint system. The covariance may be singular
/// (degenerate states sample exactly at their mean); it must be symmetric
/// positive semidefinite.
Vec10 sample(const SystemState& state, Rng& rng);

}  // namespace qtel
