#include "verify.hpp"

#include <cmath>

#include "errors.hpp"

namespace qtel {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

double backaction_constant(double kappa, ReconConstant constant) {
  const double k4 = kappa * kappa * kappa * kappa;
  switch (constant) {
    case ReconConstant::kMeasuredPort:
      return k4 / 48.0;
    case ReconConstant::kBareOutput:
      return k4 / 24.0;
  }
  throw std::runtime_error("unknown reconstruction constant");
}

}  // namespace

std::pair<double, double> decay_means(double x, double p, double beta,
                                      double tau) {
  const double d = decay_factor(NoiseParams{0.0, beta, tau, 0.0});
  return {d * x, d * p};
}

ModeState decay_mode(const ModeState& atoms, double beta, double tau,
                     bool admix_vacuum) {
  const double d = decay_factor(NoiseParams{0.0, beta, tau, 0.0});
  const double d2 = d * d;
  ModeState out;
  out.mean_y = d * atoms.mean_y;
  out.mean_q = d * atoms.mean_q;
  const double floor = admix_vacuum ? (1.0 - d2) * kVacuumVar : 0.0;
  out.var_y = d2 * atoms.var_y + floor;
  out.var_q = d2 * atoms.var_q + floor;
  return out;
}

MeasuredPorts measure_ports(const Vec10& point, double y_lower,
                            double q_lower) {
  MeasuredPorts ports;
  ports.y_c = kInvSqrt2 * point[kYc] + 0.5 * (q_lower - point[kQ]);
  ports.y_s = kInvSqrt2 * point[kYs] + 0.5 * (point[kY] + y_lower);
  ports.q_c = kInvSqrt2 * point[kQc] - 0.5 * (point[kY] - y_lower);
  ports.q_s = kInvSqrt2 * point[kQs] - 0.5 * (q_lower + point[kQ]);
  return ports;
}

VerifyOutcome verify_readout_sample(double x_a, double p_a, double kappa,
                                    const NoiseParams& noise, Rng& rng) {
  const double sd_vac = std::sqrt(kVacuumVar);
  Vec10 point;
  for (int i = kY; i <= kVs; ++i) point[i] = rng.normal(0.0, sd_vac);
  point[kXa] = x_a;
  point[kPa] = p_a;
  point = entangling_pass(point, kappa);
  point = apply_loss(point, noise.epsilon, rng);
  const double y_lower = rng.normal(0.0, sd_vac);
  const double q_lower = rng.normal(0.0, sd_vac);
  const MeasuredPorts ports = measure_ports(point, y_lower, q_lower);
  const double sd_el = std::sqrt(noise.electronic * kVacuumVar);
  const double e_c = rng.normal(0.0, sd_el);
  const double e_s = rng.normal(0.0, sd_el);
  VerifyOutcome out;
  out.y_c_ver = ports.y_c + e_c;
  // Detector polarity on the s channel makes the X readout gain positive.
  out.y_s_ver = -(ports.y_s + e_s);
  return out;
}

VerifyOutcome verifying_readout(const ModeState& atoms, double kappa,
                                const NoiseParams& noise, Rng& rng) {
  const auto [x_a, p_a] = sample(atoms, rng);
  return verify_readout_sample(x_a, p_a, kappa, noise, rng);
}

double reconstruct_variance(double measured_var, double kappa,
                            ReconConstant constant) {
  if (!(kappa > 0.0)) {
    throw ConfigError("reconstruct_variance: kappa must be > 0");
  }
  return 4.0 / (kappa * kappa) *
         (measured_var - backaction_constant(kappa, constant) - kVacuumVar);
}

ReconResult reconstruct_variances(double var_y_s_ver, double var_y_c_ver,
                                  double kappa, ReconConstant constant) {
  return ReconResult{reconstruct_variance(var_y_s_ver, kappa, constant),
                     reconstruct_variance(var_y_c_ver, kappa, constant)};
}

double reconstruction_offset(double kappa) { return kappa * kappa / 12.0; }

GainEstimate estimate_gain_slope(
    const std::vector<std::pair<double, double>>& data, double kappa,
    double decay) {
  if (data.empty()) {
    throw ConfigError("estimate_gain_slope: no data points");
  }
  if (!(kappa > 0.0) || !(decay > 0.0)) {
    throw ConfigError("estimate_gain_slope: kappa and decay must be > 0");
  }
  double sxy = 0.0;
  double sxx = 0.0;
  for (const auto& [x, y] : data) {
    sxy += x * y;
    sxx += x * x;
  }
  if (!(sxx > 0.0)) {
    throw ConfigError("estimate_gain_slope: inputs have no spread");
  }
  GainEstimate est;
  est.slope = sxy / sxx;
  est.gain = 2.0 * est.slope / (kappa * decay);
  return est;
}

ModeState tomographic_reconstruct(const std::vector<VerifyOutcome>& samples,
                                  double kappa, ReconConstant constant) {
  if (samples.size() < 2) {
    throw ConfigError("tomographic_reconstruct: need at least two samples");
  }
  double mean_s = 0.0;
  double mean_c = 0.0;
  for (const auto& v : samples) {
    mean_s += v.y_s_ver;
    mean_c += v.y_c_ver;
  }
  const double n = static_cast<double>(samples.size());
  mean_s /= n;
  mean_c /= n;
  double var_s = 0.0;
  double var_c = 0.0;
  for (const auto& v : samples) {
    var_s += (v.y_s_ver - mean_s) * (v.y_s_ver - mean_s);
    var_c += (v.y_c_ver - mean_c) * (v.y_c_ver - mean_c);
  }
  var_s /= n - 1.0;
  var_c /= n - 1.0;
  const ReconResult recon =
      reconstruct_variances(var_s, var_c, kappa, constant);
  ModeState atoms;
  atoms.mean_y = 2.0 * mean_s / kappa;
  atoms.mean_q = 2.0 * mean_c / kappa;
  atoms.var_y = recon.sigma2_x;
  atoms.var_q = recon.sigma2_p;
  return atoms;
}

}  // namespace qtel
