#include "qubit.hpp"

#include <cmath>

#include "analytics.hpp"
#include "errors.hpp"

namespace qtel {

double qubit_fidelity(const QubitChannel& channel) {
  return qubit_fidelity(channel.gain, channel.s2);
}

double qubit_fidelity(double gain, double s2) {
  if (!(s2 >= 0.0)) {
    throw ConfigError("qubit_fidelity: s2 must be >= 0");
  }
  const double dg = gain - 1.0;
  const double num = 6.0 + 16.0 * s2 + 24.0 * s2 * s2 +
                     4.0 * dg * (1.0 - 2.0 * s2) +
                     dg * dg * (1.0 - 6.0 * s2);
  const double base = 1.0 + 2.0 * s2;
  return num / (6.0 * base * base * base);
}

QubitChannel protocol_qubit_channel(double kappa, const NoiseParams& noise,
                                    double g) {
  const double d = decay_factor(noise);
  const double sigma2 = model_variance(kappa, noise, g);
  const double sigma2_read = d * d * sigma2 + (1.0 - d * d) * kVacuumVar;
  QubitChannel channel;
  channel.gain = g * d;
  channel.s2 = std::max(0.0, (2.0 * sigma2_read - 1.0) / 4.0);
  return channel;
}

QubitOptimum optimize_qubit_gain(double kappa, const NoiseParams& noise) {
  const auto value = [&](double g) {
    return qubit_fidelity(protocol_qubit_channel(kappa, noise, g));
  };
  // Golden-section maximization; the fidelity is unimodal in the gain.
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = 0.0;
  double hi = 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = value(x1);
  double f2 = value(x2);
  while (hi - lo > 1e-10) {
    if (f1 > f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = value(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = value(x2);
    }
  }
  QubitOptimum opt;
  opt.gain = 0.5 * (lo + hi);
  opt.channel = protocol_qubit_channel(kappa, noise, opt.gain);
  opt.fidelity = qubit_fidelity(opt.channel);
  return opt;
}

}  // namespace qtel
