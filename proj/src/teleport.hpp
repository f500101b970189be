/**
 * The teleportation protocol: entangling pass, polarization measurement of
 * the combined beams, feedback onto the atoms, and verification.
 *
 * The measurement outcomes combine into two feedback signals,
 *
 *   B1 = y_s - q_c        (estimates the input Y;  E[B1] = mean_Y)
 *   B2 = -(y_c + q_s)     (estimates the input Q;  E[B2] = mean_Q)
 *
 * and the feedback displaces the atoms by X_A += g_x B1, P_A += g_p B2,
 * so with unit gains the atomic means become the input means.
 */
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "gaussian.hpp"
#include "interaction.hpp"
#include "rng.hpp"
#include "verify.hpp"

namespace qtel {

/// Protocol configuration for one run.
struct ProtocolParams {
  double kappa = 0.93;
  double gain_x = 0.96;
  double gain_p = 0.95;
  NoiseParams noise{};
  /// Replace the decayed atomic fraction by vacuum noise (full decoherence
  /// channel) instead of scaling means alone.
  bool decay_admix = true;
};

/// How input states are chosen across an ensemble.
enum class InputKind {
  kFixed,  ///< same coherent state every run
  kPrior,  ///< coherent means drawn from a Gaussian prior each run
};

struct InputSpec {
  InputKind kind = InputKind::kFixed;
  double n_bar = 5.0;  ///< fixed: mean photon number
  double phase = 0.0;  ///< fixed: coherent phase
  double n_avg = 5.0;  ///< prior: mean photon number of the prior
};

/// The four measured port values of the combined input/bus beams.
struct BellOutcome {
  double y_c = 0.0;
  double y_s = 0.0;
  double q_c = 0.0;
  double q_s = 0.0;
};

/// Input-referred feedback signals; exactly recomputable from the ports.
struct FeedbackSignal {
  double b1 = 0.0;
  double b2 = 0.0;
};

FeedbackSignal feedback_from_bell(const BellOutcome& bell);

/// Measures the four ports of a propagated system state (loss already
/// applied by the caller). Adds the electronic-noise vacuum fraction from
/// `noise` to every port.
BellOutcome bell_measurement(const SystemState& state, Rng& rng,
                             const NoiseParams& noise = {});

/// Displaces definite atomic values by the gained feedback signals.
std::pair<double, double> apply_feedback(double x_a, double p_a,
                                         const FeedbackSignal& feedback,
                                         double gain_x, double gain_p);

/// Everything recorded about one protocol run. x_tele/p_tele are the
/// atomic values right after feedback; the verification fields are the
/// readout after the decay interval.
struct RunRecord {
  std::uint64_t run_id = 0;
  double y_in = 0.0;
  double q_in = 0.0;
  double b1 = 0.0;
  double b2 = 0.0;
  double x_tele = 0.0;
  double p_tele = 0.0;
  double y_c_ver = 0.0;
  double y_s_ver = 0.0;
};

/// One full protocol run on the given generator. All stochastic events
/// draw in a fixed order, so (params, input, generator state) determine
/// the record exactly.
RunRecord run_teleportation(const ProtocolParams& params,
                            const InputSpec& input, Rng& rng,
                            std::uint64_t run_id = 0);

/// Sample statistics over an ensemble of runs.
struct EnsembleStats {
  std::size_t runs = 0;
  double mean_b1 = 0.0;
  double mean_b2 = 0.0;
  double mean_x_tele = 0.0;
  double mean_p_tele = 0.0;
  double var_x_tele = 0.0;
  double var_p_tele = 0.0;
  double mean_y_c_ver = 0.0;
  double mean_y_s_ver = 0.0;
  double var_y_c_ver = 0.0;
  double var_y_s_ver = 0.0;
  /// Gains implied by the verification means (slope through the origin
  /// against the input means); NaN when the inputs have no spread.
  double gain_x_est = 0.0;
  double gain_p_est = 0.0;
  /// Atomic variances reconstructed from the verification variances with
  /// the measured-port constant, and the offset the alternative constant
  /// would subtract.
  ReconResult recon{};
  double recon_offset = 0.0;
};

struct EnsembleResult {
  std::vector<RunRecord> records;
  EnsembleStats stats;
};

/// Runs `runs` independent protocol executions. Run i uses substream
/// (seed, i), and the reduction is sequential, so results are identical
/// for every thread count (0 = pick from hardware).
EnsembleResult run_ensemble(const ProtocolParams& params,
                            const InputSpec& input, std::size_t runs,
                            std::uint64_t seed, int threads = 0);

}  // namespace qtel
