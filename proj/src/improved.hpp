/**
 * Multimode refinement of the protocol with squeezed bus light.
 *
 * The input is encoded across orthonormal temporal modes 0..n_max with
 * unit-norm weights g, the same weights combine the per-mode measurement
 * outcomes, and the bus quadratures are squeezed: Var(y) = V_y,
 * Var(q) = V_q = 1/(4 V_y). The teleported quadrature becomes
 *
 *   X_tele = Y + (1 - g_0 kappa/2) X_A + (1/sqrt2) sum_n g_n y_{s,n}
 *              + sum_m coef_m(g) q_{c,m},
 *
 * where coef(g) collects the direct measurement weight, the atomic
 * back-action on mode 0, and the second-order inter-mode cascade. The
 * added noise is an inhomogeneous quadratic on the unit sphere of g; its
 * exact minimizer comes from the secular equation of the eigenproblem.
 */
#pragma once

#include <utility>
#include <vector>

namespace qtel {

/// Fidelity for coherent inputs under the multimode protocol with the
/// given unit-norm mode weights (F = 1 / (1 + added noise)).
double improved_protocol_fidelity(double kappa, double squeeze_db,
                                  const std::vector<double>& gains);

/// Input envelope A(t) = sum_n g_n sqrt(2n+1) P_n(2t - 1) sampled on
/// [0, 1]; square-integrates to 1 for unit-norm gains.
std::vector<std::pair<double, double>> mode_envelope(
    const std::vector<double>& gains, int n_points = 1001);

struct ImprovedResult {
  std::vector<double> gains;  ///< optimal unit-norm mode weights
  double fidelity = 0.0;      ///< fidelity at the optimum
  std::vector<std::pair<double, double>> envelope;
};

/// Exact minimizer of the added noise over unit-norm weights on modes
/// 0..n_max.
ImprovedResult optimize_mode_gains(double kappa, double squeeze_db,
                                   int n_max = 3);

}  // namespace qtel
