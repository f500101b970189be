/**
 * Fidelity figures for coherent-state ensembles.
 *
 * The benchmark ensemble is a coherent state of fixed mean photon number
 * n with uniformly random phase. For a Gaussian channel with gains
 * (g_x, g_p) and output variances (s2_x, s2_p) the phase-averaged overlap
 * has the closed form implemented by ensemble_fidelity; the best
 * measure-and-prepare strategy reaches (1 + n) / (1 + 2 n).
 */
#pragma once

#include <array>
#include <utility>
#include <vector>

namespace qtel {

/// Phase-averaged fidelity for coherent inputs of mean photon number
/// `n_avg` through a Gaussian channel with the given gains and output
/// variances.
double ensemble_fidelity(double n_avg, double gain_x, double gain_p,
                         double sigma2_x, double sigma2_p);

/// Best classical (measure-and-prepare) fidelity for the same ensemble.
double classical_benchmark(double n_avg);

/// Quadratic fit Var = a g^2 + b g + c to measured (gain, variance)
/// points; returns {a, b, c}.
std::array<double, 3> fit_variance_vs_gain(
    const std::vector<std::pair<double, double>>& points);

/// Gain minimizing the mean-square transfer error
/// J(g) = Var(g) + n_avg (1 - g)^2 under a quadratic variance model.
struct GainOptimum {
  double gain = 0.0;
  double variance = 0.0;  ///< Var at the optimal gain
  double fidelity = 0.0;  ///< ensemble fidelity at the optimum (symmetric)
};

GainOptimum optimize_gains(double n_avg, const std::array<double, 3>& quad);

/// Quadrature sum of independent uncertainty contributions.
double error_budget(const std::vector<double>& deltas);

}  // namespace qtel
