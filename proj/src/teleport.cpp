#include "teleport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "errors.hpp"

namespace qtel {

namespace {

void validate(const ProtocolParams& params) {
  if (!(params.kappa > 0.0)) {
    throw ConfigError("protocol: kappa must be > 0");
  }
  if (!(params.noise.epsilon >= 0.0) || !(params.noise.epsilon < 1.0)) {
    throw ConfigError("protocol: loss epsilon must be in [0, 1)");
  }
  if (params.noise.electronic < 0.0) {
    throw ConfigError("protocol: electronic noise must be >= 0");
  }
  if (params.noise.beta < 0.0 || params.noise.tau < 0.0) {
    throw ConfigError("protocol: decay beta and tau must be >= 0");
  }
}

std::pair<double, double> draw_input_means(const InputSpec& input, Rng& rng) {
  switch (input.kind) {
    case InputKind::kFixed: {
      const ModeState mode = make_coherent(input.n_bar, input.phase);
      return {mode.mean_y, mode.mean_q};
    }
    case InputKind::kPrior: {
      if (!(input.n_avg >= 0.0)) {
        throw ConfigError("input: prior mean photon number must be >= 0");
      }
      const double sd = std::sqrt(input.n_avg);
      const double y = rng.normal(0.0, sd);
      const double q = rng.normal(0.0, sd);
      return {y, q};
    }
  }
  throw std::runtime_error("unknown input kind");
}

double sample_variance(const std::vector<RunRecord>& records,
                       double RunRecord::* field, double mean) {
  if (records.size() < 2) return 0.0;
  double acc = 0.0;
  for (const auto& rec : records) {
    const double d = rec.*field - mean;
    acc += d * d;
  }
  return acc / (static_cast<double>(records.size()) - 1.0);
}

double sample_mean(const std::vector<RunRecord>& records,
                   double RunRecord::* field) {
  double acc = 0.0;
  for (const auto& rec : records) acc += rec.*field;
  return acc / static_cast<double>(records.size());
}

/// Slope through the origin of `out` against `in`; NaN without spread.
double origin_slope(const std::vector<RunRecord>& records,
                    double RunRecord::* in, double RunRecord::* out) {
  double sxy = 0.0;
  double sxx = 0.0;
  for (const auto& rec : records) {
    sxy += (rec.*in) * (rec.*out);
    sxx += (rec.*in) * (rec.*in);
  }
  if (!(sxx > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  return sxy / sxx;
}

}  // namespace

FeedbackSignal feedback_from_bell(const BellOutcome& bell) {
  return FeedbackSignal{bell.y_s - bell.q_c, -(bell.y_c + bell.q_s)};
}

BellOutcome bell_measurement(const SystemState& state, Rng& rng,
                             const NoiseParams& noise) {
  const Vec10 point = sample(state, rng);
  const double sd_vac = std::sqrt(kVacuumVar);
  const double y_lower = rng.normal(0.0, sd_vac);
  const double q_lower = rng.normal(0.0, sd_vac);
  const MeasuredPorts ports = measure_ports(point, y_lower, q_lower);
  const double sd_el = std::sqrt(noise.electronic * kVacuumVar);
  BellOutcome out;
  out.y_c = ports.y_c + rng.normal(0.0, sd_el);
  out.y_s = ports.y_s + rng.normal(0.0, sd_el);
  out.q_c = ports.q_c + rng.normal(0.0, sd_el);
  out.q_s = ports.q_s + rng.normal(0.0, sd_el);
  return out;
}

std::pair<double, double> apply_feedback(double x_a, double p_a,
                                         const FeedbackSignal& feedback,
                                         double gain_x, double gain_p) {
  return {x_a + gain_x * feedback.b1, p_a + gain_p * feedback.b2};
}

RunRecord run_teleportation(const ProtocolParams& params,
                            const InputSpec& input, Rng& rng,
                            std::uint64_t run_id) {
  validate(params);
  const double sd_vac = std::sqrt(kVacuumVar);

  RunRecord rec;
  rec.run_id = run_id;

  // Draw order is fixed: input means, the ten initial variables, six loss
  // vacua, the sideband pair, four electronic values, two decay admixtures,
  // then the verification pulse.
  const auto [y_in, q_in] = draw_input_means(input, rng);
  rec.y_in = y_in;
  rec.q_in = q_in;

  Vec10 point;
  point[kY] = y_in + rng.normal(0.0, sd_vac);
  point[kQ] = q_in + rng.normal(0.0, sd_vac);
  for (int i = kYc; i <= kVs; ++i) point[i] = rng.normal(0.0, sd_vac);
  point[kXa] = rng.normal(0.0, sd_vac);
  point[kPa] = rng.normal(0.0, sd_vac);

  point = entangling_pass(point, params.kappa);
  point = apply_loss(point, params.noise.epsilon, rng);

  const double y_lower = rng.normal(0.0, sd_vac);
  const double q_lower = rng.normal(0.0, sd_vac);
  const MeasuredPorts ports = measure_ports(point, y_lower, q_lower);
  const double sd_el = std::sqrt(params.noise.electronic * kVacuumVar);
  BellOutcome bell;
  bell.y_c = ports.y_c + rng.normal(0.0, sd_el);
  bell.y_s = ports.y_s + rng.normal(0.0, sd_el);
  bell.q_c = ports.q_c + rng.normal(0.0, sd_el);
  bell.q_s = ports.q_s + rng.normal(0.0, sd_el);

  const FeedbackSignal feedback = feedback_from_bell(bell);
  rec.b1 = feedback.b1;
  rec.b2 = feedback.b2;

  const auto [x_tele, p_tele] = apply_feedback(
      point[kXa], point[kPa], feedback, params.gain_x, params.gain_p);
  rec.x_tele = x_tele;
  rec.p_tele = p_tele;

  // Decay between feedback and verification. The admixture draws happen
  // either way so the stream layout does not depend on the flag.
  const double d = decay_factor(params.noise);
  const double sd_admix =
      params.decay_admix ? std::sqrt((1.0 - d * d) * kVacuumVar) : 0.0;
  const double x_read = d * x_tele + rng.normal(0.0, sd_admix);
  const double p_read = d * p_tele + rng.normal(0.0, sd_admix);

  const VerifyOutcome verify =
      verify_readout_sample(x_read, p_read, params.kappa, params.noise, rng);
  rec.y_c_ver = verify.y_c_ver;
  rec.y_s_ver = verify.y_s_ver;
  return rec;
}

EnsembleResult run_ensemble(const ProtocolParams& params,
                            const InputSpec& input, std::size_t runs,
                            std::uint64_t seed, int threads) {
  validate(params);
  if (runs == 0) throw ConfigError("run_ensemble: need at least one run");
  if (threads < 0) throw ConfigError("run_ensemble: threads must be >= 0");

  EnsembleResult result;
  result.records.resize(runs);

  unsigned n_threads = threads > 0
                           ? static_cast<unsigned>(threads)
                           : std::max(1u, std::thread::hardware_concurrency());
  n_threads = std::min<unsigned>(n_threads,
                                 static_cast<unsigned>(std::min<std::size_t>(
                                     runs, 64)));

  const auto worker = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      Rng rng = substream(seed, i);
      result.records[i] = run_teleportation(params, input, rng, i);
    }
  };

  if (n_threads <= 1) {
    worker(0, runs);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    const std::size_t chunk = (runs + n_threads - 1) / n_threads;
    for (unsigned t = 0; t < n_threads; ++t) {
      const std::size_t begin = std::min<std::size_t>(t * chunk, runs);
      const std::size_t end = std::min<std::size_t>(begin + chunk, runs);
      if (begin < end) pool.emplace_back(worker, begin, end);
    }
    for (auto& th : pool) th.join();
  }

  // Sequential reduction over the ordered records: identical statistics
  // for every thread count.
  EnsembleStats& stats = result.stats;
  stats.runs = runs;
  stats.mean_b1 = sample_mean(result.records, &RunRecord::b1);
  stats.mean_b2 = sample_mean(result.records, &RunRecord::b2);
  stats.mean_x_tele = sample_mean(result.records, &RunRecord::x_tele);
  stats.mean_p_tele = sample_mean(result.records, &RunRecord::p_tele);
  stats.var_x_tele =
      sample_variance(result.records, &RunRecord::x_tele, stats.mean_x_tele);
  stats.var_p_tele =
      sample_variance(result.records, &RunRecord::p_tele, stats.mean_p_tele);
  stats.mean_y_c_ver = sample_mean(result.records, &RunRecord::y_c_ver);
  stats.mean_y_s_ver = sample_mean(result.records, &RunRecord::y_s_ver);
  stats.var_y_c_ver =
      sample_variance(result.records, &RunRecord::y_c_ver, stats.mean_y_c_ver);
  stats.var_y_s_ver =
      sample_variance(result.records, &RunRecord::y_s_ver, stats.mean_y_s_ver);

  const double d = decay_factor(params.noise);
  const double slope_x =
      origin_slope(result.records, &RunRecord::y_in, &RunRecord::y_s_ver);
  const double slope_p =
      origin_slope(result.records, &RunRecord::q_in, &RunRecord::y_c_ver);
  stats.gain_x_est = 2.0 * slope_x / (params.kappa * d);
  stats.gain_p_est = 2.0 * slope_p / (params.kappa * d);

  stats.recon = reconstruct_variances(stats.var_y_s_ver, stats.var_y_c_ver,
                                      params.kappa,
                                      ReconConstant::kMeasuredPort);
  stats.recon_offset = reconstruction_offset(params.kappa);
  return result;
}

}  // namespace qtel
