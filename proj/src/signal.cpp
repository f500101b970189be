#include "signal.hpp"

#include <cmath>
#include <numbers>

#include "errors.hpp"
#include "gaussian.hpp"
#include "interaction.hpp"

namespace qtel {

namespace {

struct References {
  std::vector<double> cosine;
  std::vector<double> sine;
};

References make_references(std::size_t n, double frequency_hz,
                           double sample_rate_hz) {
  References ref;
  ref.cosine.resize(n);
  ref.sine.resize(n);
  const double w = 2.0 * std::numbers::pi * frequency_hz / sample_rate_hz;
  for (std::size_t k = 0; k < n; ++k) {
    ref.cosine[k] = std::cos(w * static_cast<double>(k));
    ref.sine[k] = std::sin(w * static_cast<double>(k));
  }
  return ref;
}

void validate(const TraceParams& params) {
  if (!(params.duration_s > 0.0) || !(params.sample_rate_hz > 0.0)) {
    throw ConfigError("trace: duration and sample rate must be > 0");
  }
  if (!(params.frequency_hz > 0.0) ||
      params.frequency_hz >= 0.5 * params.sample_rate_hz) {
    throw ConfigError("trace: frequency must sit below Nyquist");
  }
  if (!(params.power > 0.0) || params.electronic < 0.0) {
    throw ConfigError("trace: power must be > 0 and electronic >= 0");
  }
  if (params.duration_s * params.sample_rate_hz < 16.0) {
    throw ConfigError("trace: too few samples");
  }
}

/// Removes the cos/sin component at the analysis frequency from `noise`
/// (exact Gram solve, valid also away from integer cycle counts).
void notch_out(std::vector<double>& noise, const References& ref) {
  double gcc = 0.0, gss = 0.0, gcs = 0.0, ic = 0.0, is = 0.0;
  for (std::size_t k = 0; k < noise.size(); ++k) {
    gcc += ref.cosine[k] * ref.cosine[k];
    gss += ref.sine[k] * ref.sine[k];
    gcs += ref.cosine[k] * ref.sine[k];
    ic += noise[k] * ref.cosine[k];
    is += noise[k] * ref.sine[k];
  }
  const double det = gcc * gss - gcs * gcs;
  if (!(std::abs(det) > 0.0)) return;
  const double a = (ic * gss - is * gcs) / det;
  const double b = (is * gcc - ic * gcs) / det;
  for (std::size_t k = 0; k < noise.size(); ++k) {
    noise[k] -= a * ref.cosine[k] + b * ref.sine[k];
  }
}

}  // namespace

std::vector<double> synthesize_photocurrent(double mean_y_c, double mean_y_s,
                                            const TraceParams& params,
                                            Rng& rng) {
  validate(params);
  const auto n = static_cast<std::size_t>(
      std::llround(params.duration_s * params.sample_rate_hz));
  const double dt = 1.0 / params.sample_rate_hz;
  const References ref =
      make_references(n, params.frequency_hz, params.sample_rate_hz);

  // In-band quadrature pair for this pulse.
  const double sd_vac = std::sqrt(kVacuumVar);
  const double y_c = mean_y_c + rng.normal(0.0, sd_vac);
  const double y_s = mean_y_s + rng.normal(0.0, sd_vac);

  // Shot-noise continuum, with its in-band component belonging to the
  // quadrature pair above, and therefore projected out.
  std::vector<double> noise(n);
  const double sd_shot = std::sqrt(params.power / (2.0 * dt));
  for (auto& w : noise) w = rng.normal(0.0, sd_shot);
  notch_out(noise, ref);

  const double amp =
      std::sqrt(params.power) * std::sqrt(2.0 / params.duration_s);
  std::vector<double> trace(n);
  for (std::size_t k = 0; k < n; ++k) {
    trace[k] = amp * (y_c * ref.cosine[k] + y_s * ref.sine[k]) + noise[k];
  }
  if (params.electronic > 0.0) {
    const double sd_el = std::sqrt(params.electronic / (2.0 * dt));
    for (auto& s : trace) s += rng.normal(0.0, sd_el);
  }
  return trace;
}

std::pair<double, double> lockin_demodulate(const std::vector<double>& trace,
                                            double frequency_hz,
                                            double sample_rate_hz) {
  if (trace.empty()) throw ConfigError("lockin_demodulate: empty trace");
  const References ref =
      make_references(trace.size(), frequency_hz, sample_rate_hz);
  const double dt = 1.0 / sample_rate_hz;
  double ic = 0.0;
  double is = 0.0;
  for (std::size_t k = 0; k < trace.size(); ++k) {
    ic += trace[k] * ref.cosine[k];
    is += trace[k] * ref.sine[k];
  }
  return {ic * dt, is * dt};
}

double shot_noise_reference(double power, double duration_s) {
  if (!(power > 0.0) || !(duration_s > 0.0)) {
    throw ConfigError("shot_noise_reference: power and duration must be > 0");
  }
  return 0.5 * std::sqrt(power * duration_s);
}

double shot_noise_reference(
    const std::vector<std::pair<double, double>>& vacuum_integrals) {
  if (vacuum_integrals.empty()) {
    throw ConfigError("shot_noise_reference: no vacuum integrals");
  }
  double acc = 0.0;
  for (const auto& [ic, is] : vacuum_integrals) acc += ic * ic + is * is;
  return std::sqrt(acc / (2.0 * static_cast<double>(vacuum_integrals.size())));
}

std::pair<double, double> demodulate_calibrated(
    const std::vector<double>& trace, double frequency_hz,
    double sample_rate_hz, double vacuum_rms) {
  if (!(vacuum_rms > 0.0)) {
    throw ConfigError("demodulate_calibrated: vacuum RMS must be > 0");
  }
  const auto [ic, is] = lockin_demodulate(trace, frequency_hz, sample_rate_hz);
  const double scale = std::numbers::sqrt2 * vacuum_rms;
  return {ic / scale, is / scale};
}

ScanResult shot_noise_scan(const std::vector<double>& powers,
                           const TraceParams& base, int traces_per_power,
                           std::uint64_t seed) {
  if (powers.size() < 3) {
    throw ConfigError("shot_noise_scan: need at least three powers");
  }
  if (traces_per_power < 1) {
    throw ConfigError("shot_noise_scan: need at least one trace per power");
  }
  ScanResult result;
  result.points.reserve(powers.size());
  for (std::size_t p = 0; p < powers.size(); ++p) {
    TraceParams params = base;
    params.power = powers[p];
    double acc = 0.0;
    for (int t = 0; t < traces_per_power; ++t) {
      Rng rng = substream(
          seed, p * static_cast<std::size_t>(traces_per_power) + t);
      const std::vector<double> trace =
          synthesize_photocurrent(0.0, 0.0, params, rng);
      double mean = 0.0;
      for (double s : trace) mean += s;
      mean /= static_cast<double>(trace.size());
      double var = 0.0;
      for (double s : trace) var += (s - mean) * (s - mean);
      var /= static_cast<double>(trace.size()) - 1.0;
      acc += var;
    }
    result.points.push_back({powers[p], acc / traces_per_power});
  }
  std::vector<double> x;
  std::vector<double> y;
  for (const auto& pt : result.points) {
    x.push_back(pt.x);
    y.push_back(pt.y);
  }
  result.fit = linear_fit(x, y);
  return result;
}

ScanResult projection_noise_scan(const std::vector<double>& atom_numbers,
                                 double kappa_ref, double n_ref,
                                 int samples_per_point, std::uint64_t seed) {
  if (atom_numbers.size() < 3) {
    throw ConfigError("projection_noise_scan: need at least three points");
  }
  if (samples_per_point < 2) {
    throw ConfigError("projection_noise_scan: need at least two samples");
  }
  if (!(kappa_ref > 0.0) || !(n_ref > 0.0)) {
    throw ConfigError("projection_noise_scan: kappa_ref and n_ref must be > 0");
  }
  const double sd_vac = std::sqrt(kVacuumVar);
  ScanResult result;
  result.points.reserve(atom_numbers.size());
  for (std::size_t i = 0; i < atom_numbers.size(); ++i) {
    if (!(atom_numbers[i] >= 0.0)) {
      throw ConfigError("projection_noise_scan: atom numbers must be >= 0");
    }
    const double rel = atom_numbers[i] / n_ref;
    const double kappa = kappa_ref * std::sqrt(rel);
    Rng rng = substream(seed, i);
    double mean = 0.0;
    std::vector<double> values(samples_per_point);
    for (auto& v : values) {
      const double y_in = rng.normal(0.0, sd_vac);
      const double p_joint = rng.normal(0.0, sd_vac);
      v = two_cell_pass(y_in, kappa, p_joint);
      mean += v;
    }
    mean /= static_cast<double>(samples_per_point);
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    var /= static_cast<double>(samples_per_point) - 1.0;
    result.points.push_back({rel, var});
  }
  std::vector<double> x;
  std::vector<double> y;
  for (const auto& pt : result.points) {
    x.push_back(pt.x);
    y.push_back(pt.y);
  }
  result.fit = linear_fit(x, y);
  return result;
}

}  // namespace qtel
