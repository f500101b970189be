/**
 * Qubit transfer through the continuous-variable channel.
 *
 * A qubit encoded in the {|0>, |1>} photon-number subspace and sent
 * through a Gaussian channel with amplitude gain g and added-noise
 * parameter s2 reaches the average fidelity
 *
 *   F_q = [ 6 + 16 s2 + 24 s2^2 + 4 (g-1)(1 - 2 s2)
 *           + (g-1)^2 (1 - 6 s2) ] / [ 6 (1 + 2 s2)^3 ],
 *
 * averaged over the Bloch sphere. The protocol realizes such a channel
 * with g the mean transfer gain and s2 = (2 sigma^2 - 1)/4, where sigma^2
 * is the teleported quadrature variance (vacuum 1/2 convention).
 */
#pragma once

#include "interaction.hpp"

namespace qtel {

/// Gaussian-channel parameters seen by the qubit.
struct QubitChannel {
  double gain = 1.0;
  double s2 = 0.0;
};

/// Bloch-averaged qubit fidelity of the channel.
double qubit_fidelity(const QubitChannel& channel);
double qubit_fidelity(double gain, double s2);

/// Channel parameters of a protocol run with feedback gain `g`: the decay
/// interval multiplies the mean gain by e^(-beta tau) and admixes vacuum
/// into the variance.
QubitChannel protocol_qubit_channel(double kappa, const NoiseParams& noise,
                                    double g);

/// Feedback gain maximizing the qubit fidelity of the protocol channel.
struct QubitOptimum {
  double gain = 0.0;       ///< protocol feedback gain
  QubitChannel channel{};  ///< resulting channel parameters
  double fidelity = 0.0;
};

QubitOptimum optimize_qubit_gain(double kappa, const NoiseParams& noise);

}  // namespace qtel
