/**
 * Verification readout of the atomic state after a protocol run.
 *
 * A fresh bus pulse (input port in vacuum) is sent through the ensemble;
 * the polarization measurement of its cos/sin components reads the atomic
 * means with gain kappa/2:
 *
 *   E[y_s_ver] = +(kappa/2) e^(-beta tau) X_A,
 *   E[y_c_ver] = +(kappa/2) e^(-beta tau) P_A,
 *
 * (the s-channel sign is fixed by detector polarity). Measured variances
 * reconstruct the atomic ones through
 *
 *   sigma^2 = (4/kappa^2) [ Var - C(kappa) - 1/2 ],
 *
 * where the constant C removes the pulse's own back-action noise. For the
 * measured port (after the 50/50 mix with the input beam) the exact
 * forward-model constant is kappa^4/48; the pre-mix bus variable carries
 * kappa^4/24. Both are selectable; they differ by exactly kappa^2/12 in
 * the reconstructed variance.
 */
#pragma once

#include <utility>
#include <vector>

#include "gaussian.hpp"
#include "interaction.hpp"
#include "rng.hpp"

namespace qtel {

/// Back-action constant used when inverting measured variances.
enum class ReconConstant {
  kMeasuredPort,  ///< kappa^4/48, matches the measured-port forward model
  kBareOutput,    ///< kappa^4/24, the pre-mix bus-variable constant
};

/// Means after free decay for time tau at rate beta.
std::pair<double, double> decay_means(double x, double p, double beta,
                                      double tau);

/// Decay channel on a full mode: means shrink by d = e^(-beta tau); with
/// `admix_vacuum` the lost fraction is replaced by vacuum,
/// var -> d^2 var + (1 - d^2)/2, otherwise only the deterministic scaling
/// is applied.
ModeState decay_mode(const ModeState& atoms, double beta, double tau,
                     bool admix_vacuum);

/// Values measured at the four polarization-measurement ports for a
/// propagated light point. The bus components mix 50/50 with the input
/// beam's sideband mode; (y_lower, q_lower) is that beam's lower-sideband
/// vacuum pair.
struct MeasuredPorts {
  double y_c = 0.0;
  double y_s = 0.0;
  double q_c = 0.0;
  double q_s = 0.0;
};

MeasuredPorts measure_ports(const Vec10& point, double y_lower,
                            double q_lower);

/// One verification measurement.
struct VerifyOutcome {
  double y_c_ver = 0.0;  ///< reads (kappa/2) P_A
  double y_s_ver = 0.0;  ///< reads (kappa/2) X_A
};

/// Readout given definite atomic values (used per run, where the atomic
/// quadratures for this trajectory are already drawn).
VerifyOutcome verify_readout_sample(double x_a, double p_a, double kappa,
                                    const NoiseParams& noise, Rng& rng);

/// Readout of a Gaussian atomic mode: draws the atomic values, then
/// measures them with a fresh pulse.
VerifyOutcome verifying_readout(const ModeState& atoms, double kappa,
                                const NoiseParams& noise, Rng& rng);

/// Inverts one measured-port variance to an atomic variance.
double reconstruct_variance(double measured_var, double kappa,
                            ReconConstant constant);

/// Atomic variances from the two verification channels
/// (y_s channel -> sigma2_x, y_c channel -> sigma2_p).
struct ReconResult {
  double sigma2_x = 0.0;
  double sigma2_p = 0.0;
};

ReconResult reconstruct_variances(double var_y_s_ver, double var_y_c_ver,
                                  double kappa, ReconConstant constant);

/// Exact difference between the two reconstructions: kappa^2 / 12.
double reconstruction_offset(double kappa);

/// Fitted mean-transfer slope of verification means against input means,
/// and the protocol gain it implies.
struct GainEstimate {
  double slope = 0.0;  ///< least-squares slope through the origin
  double gain = 0.0;   ///< 2 slope / (kappa decay)
};

/// `data` holds (input mean, verification mean) pairs; `decay` is the
/// mean survival factor e^(-beta tau) between feedback and readout.
GainEstimate estimate_gain_slope(
    const std::vector<std::pair<double, double>>& data, double kappa,
    double decay);

/// Point estimate of the atomic Gaussian state from verification samples:
/// means with gain 2/kappa, variances through reconstruct_variances.
ModeState tomographic_reconstruct(const std::vector<VerifyOutcome>& samples,
                                  double kappa,
                                  ReconConstant constant =
                                      ReconConstant::kMeasuredPort);

}  // namespace qtel
