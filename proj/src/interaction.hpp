/**
 * Off-resonant Faraday interaction between the light pulse and the
 * atomic ensemble, to second order in the coupling constant kappa.
 *
 * The single pass maps (primes = after, unprimed = before):
 *
 *   y_c' = y_c + (k^2/4) q_s + (k^2/(4 sqrt3)) v_s + (k/sqrt2) P_A
 *   y_s' = y_s - (k^2/4) q_c - (k^2/(4 sqrt3)) v_c - (k/sqrt2) X_A
 *   q_c' = q_c,  q_s' = q_s,  v' = v
 *   X_A' = X_A + (k/sqrt2) q_c
 *   P_A' = P_A + (k/sqrt2) q_s
 *
 * (Y, Q) ride along unchanged. v_c, v_s are the q-type quadratures of the
 * first-order temporal mode; their conjugate partners never couple back at
 * this order and are not tracked, so the symplectic form carried by the
 * 10-variable layout has a null block on (v_c, v_s).
 */
#pragma once

#include <Eigen/Dense>

#include <vector>

#include "gaussian.hpp"

namespace qtel {

/// Physical inputs for the coupling constant.
struct CouplingParams {
  double a1 = 1.0;          ///< vector polarizability coefficient
  double n_photons = 0.0;   ///< photons in the bus pulse
  double n_atoms = 0.0;     ///< atoms in one cell
  double f = 1.0;           ///< oscillator/geometry factor
  double sigma = 1.0;       ///< resonant cross-section (area units)
  double gamma = 1.0;       ///< natural linewidth HWHM (frequency units)
  double area = 1.0;        ///< beam cross-section (same area units)
  double delta = 1.0;       ///< detuning (same frequency units)
};

/// kappa = a1 sqrt(n_photons n_atoms) f sigma gamma / (area delta).
/// Dimensionless for any consistent choice of area and frequency units.
double compute_kappa(const CouplingParams& p);

/// Detection-chain imperfections.
struct NoiseParams {
  double epsilon = 0.0;     ///< intensity loss on the bus pulse, in [0, 1)
  double beta = 0.0;        ///< atomic decay rate (1/time)
  double tau = 0.0;         ///< delay before the verification pulse (time)
  double electronic = 0.0;  ///< electronic noise as a vacuum-variance fraction
};

/// Mean-amplitude survival factor exp(-beta tau).
double decay_factor(const NoiseParams& noise);

/// The linear map above as a matrix acting on the 10-variable layout.
Mat10 entangling_matrix(double kappa);

/// Applies one entangling pass to a Gaussian system state.
SystemState entangling_pass(const SystemState& state, double kappa);

/// Applies one entangling pass to a sampled phase-space point.
Vec10 entangling_pass(const Vec10& point, double kappa);

/// Mixes each bus-pulse variable (y_c .. v_s) with vacuum:
/// x -> sqrt(1-eps) x + sqrt(eps) vac. The input mode (Y, Q) and the atoms
/// are untouched; input-path attenuation is absorbed into the measured
/// gains, and the calibrated kappa already contains its loss factor.
SystemState apply_loss(const SystemState& state, double epsilon);

/// Same channel on a sampled point; draws the six admixed vacua from `rng`.
Vec10 apply_loss(const Vec10& point, double epsilon, Rng& rng);

/// Two oppositely pumped cells probed by one pulse: the second-order terms
/// cancel and the pulse picks up only the joint spin,
/// y_c -> y_c + kappa P_joint. Returns the output light mode given the
/// joint-spin variance (canonical units; 1/2 for two coherent-spin cells).
ModeState two_cell_pass(const ModeState& light, double kappa,
                        double joint_spin_var);

/// Sample-level version of the two-cell readout.
double two_cell_pass(double y_c_in, double kappa, double p_joint);

/// Quadratures of the bus pulse expanded over orthonormal temporal modes
/// 0..n_max, stored as [y_c0, y_s0, q_c0, q_s0, y_c1, ...]. This tracks
/// the light-only cascade; the atoms (and their mode-0 back-action) are
/// handled by the 10-variable pass.
struct HigherModeState {
  int n_max = 0;
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov;

  static HigherModeState vacuum(int n_max);
};

/// Inter-mode second-order cascade on modes 0..n_max:
///   y_{c,n} += (k^2/4) (c_{n+1} q_{s,n+1} - c_n q_{s,n-1})
///   y_{s,n} -= (k^2/4) (c_{n+1} q_{c,n+1} - c_n q_{c,n-1})
/// with c_n = 1/sqrt(4 n^2 - 1); terms with out-of-range indices drop.
/// At n = 0 this reproduces the v-mode terms of the 10-variable pass
/// (c_1 = 1/sqrt3).
Eigen::MatrixXd higher_order_matrix(double kappa, int n_max);

HigherModeState higher_order_pass(const HigherModeState& state, double kappa);

/// Symplectic form carried by the 10-variable layout: canonical 2x2 blocks
/// for the conjugate pairs (Y,Q), (y_c,q_c), (y_s,q_s), (X_A,P_A), and a
/// null block for (v_c, v_s) whose conjugates are untracked.
Mat10 symplectic_form_10();

/// Canonical symplectic form for the 4(n_max+1) higher-mode layout, pairing
/// (y_{c,n}, q_{c,n}) and (y_{s,n}, q_{s,n}).
Eigen::MatrixXd symplectic_form_modes(int n_max);

/// max |S Omega S^T - Omega| over entries.
double symplectic_defect(const Eigen::MatrixXd& map,
                         const Eigen::MatrixXd& form);

}  // namespace qtel
