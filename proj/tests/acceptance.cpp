/**
 * Acceptance gate. Runs every release criterion end to end against the
 * library and prints one PASS/FAIL line per criterion, then a summary.
 * Exits nonzero when any criterion fails.
 */
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "analytics.hpp"
#include "fidelity.hpp"
#include "improved.hpp"
#include "interaction.hpp"
#include "oracles.hpp"
#include "qubit.hpp"
#include "rng.hpp"
#include "signal.hpp"
#include "teleport.hpp"
#include "verify.hpp"

namespace {

int g_passed = 0;
int g_total = 0;

void record(int id, bool ok, const std::string& detail) {
  ++g_total;
  if (ok) ++g_passed;
  std::printf("%s %2d  %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
}

std::string fmt(const char* format, ...) {
  va_list args;
  va_start(args, format);
  char buffer[512];
  std::vsnprintf(buffer, sizeof buffer, format, args);
  va_end(args);
  return buffer;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

/// Round to a fixed number of decimal places (for quoted-value comparisons).
double round_to(double value, int decimals) {
  const double scale = std::pow(10.0, decimals);
  return std::round(value * scale) / scale;
}

// 1. Ensemble fidelity at the published operating point.
void criterion_1() {
  const double f = qtel::ensemble_fidelity(5.0, 0.96, 0.95, 1.20, 1.12);
  const bool ok = std::abs(f - 0.60) <= 0.005;
  record(1, ok,
         fmt("ensemble_fidelity(5, 0.96, 0.95, 1.20, 1.12) = %.6f, "
             "required 0.60 +/- 0.005",
             f));
}

// 2. Classical benchmark values at the quoted mean photon numbers.
void criterion_2() {
  struct Case {
    double n_bar;
    double quoted;
    int decimals;
  };
  const std::vector<Case> cases = {{2, 0.60, 2},
                                   {5, 0.545, 3},
                                   {10, 0.52, 2},
                                   {20, 0.51, 2},
                                   {200, 0.50, 2}};
  bool ok = true;
  double worst = 0.0;
  for (const Case& c : cases) {
    const double f = qtel::classical_benchmark(c.n_bar);
    const double diff = std::abs(round_to(f, c.decimals) - c.quoted);
    worst = std::max(worst, diff);
    if (diff > 0.001 + 1e-12) ok = false;
  }
  record(2, ok,
         fmt("classical_benchmark at n = 2/5/10/20/200 rounds to "
             "0.60/0.545/0.52/0.51/0.50 (worst deviation %.2g, allowed "
             "0.001)",
             worst));
}

// 3. Gain-slope calibration from simulated verification readouts.
void criterion_3() {
  qtel::ProtocolParams params;
  params.kappa = 0.93;
  params.gain_x = 1.0;
  params.gain_p = 1.0;
  const double decay = 0.91;
  params.noise.beta = -std::log(decay);
  params.noise.tau = 1.0;

  qtel::InputSpec input;
  input.kind = qtel::InputKind::kPrior;
  input.n_avg = 5.0;

  const std::size_t runs = 200000;
  const qtel::EnsembleResult res =
      qtel::run_ensemble(params, input, runs, 61803);

  std::vector<std::pair<double, double>> pairs;
  pairs.reserve(2 * res.records.size());
  for (const qtel::RunRecord& r : res.records) {
    pairs.emplace_back(r.y_in, r.y_s_ver);
    pairs.emplace_back(r.q_in, r.y_c_ver);
  }
  const qtel::GainEstimate est =
      qtel::estimate_gain_slope(pairs, params.kappa, decay);
  const bool ok = std::abs(est.slope - 0.42) <= 0.005;
  record(3, ok,
         fmt("estimate_gain_slope at g = 1, kappa = 0.93, decay = 0.91 "
             "gives slope %.4f (gain %.4f) from %zu pairs, required "
             "0.42 +/- 0.005",
             est.slope, est.gain, pairs.size()));
}

// 4. Improved multimode protocol fidelities at kappa = 2.3.
void criterion_4() {
  const auto t0 = std::chrono::steady_clock::now();
  const qtel::ImprovedResult f0 = qtel::optimize_mode_gains(2.3, 0.0, 3);
  const qtel::ImprovedResult f6 = qtel::optimize_mode_gains(2.3, 6.0, 3);
  const qtel::ImprovedResult f10 = qtel::optimize_mode_gains(2.3, 10.0, 3);
  const double elapsed = seconds_since(t0);
  const bool in_band = std::abs(f0.fidelity - 0.80) <= 0.02 &&
                       std::abs(f6.fidelity - 0.93) <= 0.02 &&
                       std::abs(f10.fidelity - 0.96) <= 0.02;
  const bool ok = in_band && elapsed < 10.0;
  record(4, ok,
         fmt("optimize_mode_gains(kappa = 2.3) gives F = %.4f / %.4f / "
             "%.4f at 0 / 6 / 10 dB, required 0.80 / 0.93 / 0.96 each "
             "+/- 0.02, in %.2f s (limit 10 s)",
             f0.fidelity, f6.fidelity, f10.fidelity, elapsed));
}

// 5. Qubit fidelity against a numeric Bloch-sphere oracle.
void criterion_5() {
  qtel::Rng rng(424242);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double gain = 0.5 + 0.7 * rng.uniform();
    const double s2 = 3.0 * rng.uniform();
    const double closed = qtel::qubit_fidelity(gain, s2);
    const oracles::QubitChannelOracle oracle(gain, s2);
    worst = std::max(worst, std::abs(closed - oracle.average_fidelity()));
  }
  const qtel::QubitOptimum best = qtel::optimize_qubit_gain(1.0, {});
  const bool ok = worst <= 1e-4 && std::abs(best.fidelity - 0.74) <= 0.01;
  record(5, ok,
         fmt("qubit_fidelity vs Bloch integration: worst |diff| = %.2e "
             "over 50 channels (allowed 1e-4); lossless kappa = 1 optimum "
             "F = %.4f, required 0.74 +/- 0.01",
             worst, best.fidelity));
}

// 6. Monte Carlo moments match exact covariance propagation.
void criterion_6() {
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t runs = 100000;
  qtel::Rng draw(90125);
  int bad = 0;
  double worst_sigma = 0.0;

  for (int set = 0; set < 10; ++set) {
    qtel::ProtocolParams params;
    params.kappa = 0.5 + 1.0 * draw.uniform();
    params.gain_x = 0.7 + 0.4 * draw.uniform();
    params.gain_p = 0.7 + 0.4 * draw.uniform();
    params.noise.epsilon = 0.2 * draw.uniform();
    params.noise.electronic = 0.3 * draw.uniform();
    params.noise.beta = 0.2 * draw.uniform();
    params.noise.tau = 1.0;
    params.decay_admix = (set % 2 == 0);

    qtel::InputSpec input;
    input.kind = (set % 2 == 0) ? qtel::InputKind::kFixed
                                : qtel::InputKind::kPrior;
    input.n_bar = 0.5 + 9.5 * draw.uniform();
    input.phase = 2.0 * std::numbers::pi * draw.uniform();
    input.n_avg = 1.0 + 7.0 * draw.uniform();

    const qtel::TeleportMoments exact = qtel::exact_moments(params, input);
    const qtel::EnsembleResult res =
        qtel::run_ensemble(params, input, runs, 7100 + set);

    Eigen::Matrix<double, 6, 1> mean = Eigen::Matrix<double, 6, 1>::Zero();
    for (const qtel::RunRecord& r : res.records) {
      mean += (Eigen::Matrix<double, 6, 1>() << r.b1, r.b2, r.x_tele,
               r.p_tele, r.y_c_ver, r.y_s_ver)
                  .finished();
    }
    mean /= static_cast<double>(runs);
    Eigen::Matrix<double, 6, 6> cov = Eigen::Matrix<double, 6, 6>::Zero();
    for (const qtel::RunRecord& r : res.records) {
      const Eigen::Matrix<double, 6, 1> v =
          (Eigen::Matrix<double, 6, 1>() << r.b1, r.b2, r.x_tele, r.p_tele,
           r.y_c_ver, r.y_s_ver)
              .finished() -
          mean;
      cov += v * v.transpose();
    }
    cov /= static_cast<double>(runs - 1);

    const double n = static_cast<double>(runs);
    for (int i = 0; i < 6; ++i) {
      const double se = std::sqrt(exact.cov(i, i) / n);
      const double pull = std::abs(mean[i] - exact.mean[i]) / se;
      worst_sigma = std::max(worst_sigma, pull);
      if (pull > 3.0) ++bad;
      for (int j = i; j < 6; ++j) {
        const double se_cov =
            (i == j) ? exact.cov(i, i) * std::sqrt(2.0 / (n - 1.0))
                     : std::sqrt((exact.cov(i, i) * exact.cov(j, j) +
                                  exact.cov(i, j) * exact.cov(i, j)) /
                                 n);
        const double pull_cov =
            std::abs(cov(i, j) - exact.cov(i, j)) / se_cov;
        worst_sigma = std::max(worst_sigma, pull_cov);
        if (pull_cov > 3.0) ++bad;
      }
    }
  }
  const double elapsed = seconds_since(t0);
  const bool ok = bad == 0 && elapsed < 60.0;
  record(6, ok,
         fmt("Monte Carlo (N = 100000) vs exact moments over 10 parameter "
             "sets: %d of 270 comparisons outside 3 sigma (worst pull "
             "%.2f), in %.1f s (limit 60 s)",
             bad, worst_sigma, elapsed));
}

// 7. Symplectic form preservation of the interaction maps.
void criterion_7() {
  const qtel::Mat10 omega10 = qtel::symplectic_form_10();
  double worst = 0.0;
  for (double kappa : {0.5, 0.93, 1.0, 2.3}) {
    worst = std::max(
        worst, qtel::symplectic_defect(qtel::entangling_matrix(kappa),
                                       omega10));
    for (int n_max : {0, 3, 6}) {
      worst = std::max(worst, qtel::symplectic_defect(
                                  qtel::higher_order_matrix(kappa, n_max),
                                  qtel::symplectic_form_modes(n_max)));
    }
  }
  const bool ok = worst < 1e-12;
  record(7, ok,
         fmt("entangling and cascaded-mode maps preserve the symplectic "
             "form for kappa in {0.5, 0.93, 1, 2.3}: worst defect %.2e "
             "(allowed 1e-12)",
             worst));
}

// 8. Projection-noise scan recovers the injected coupling.
void criterion_8() {
  const double kappa_ref = 0.93;
  const double kappa2_true = kappa_ref * kappa_ref;
  const std::vector<double> atoms = {0.2e12, 0.5e12, 0.8e12, 1.1e12,
                                     1.4e12, 1.7e12, 2.0e12};
  const qtel::ScanResult scan =
      qtel::projection_noise_scan(atoms, kappa_ref, 1.0e12, 20000, 271828);
  const double kappa2_hat = 2.0 * scan.fit.slope;
  const double kappa2_se = 2.0 * scan.fit.slope_se;
  const bool ok = std::abs(kappa2_hat - kappa2_true) <= 1.96 * kappa2_se &&
                  std::abs(scan.fit.intercept - 0.5) <=
                      1.96 * scan.fit.intercept_se &&
                  scan.fit.r2 > 0.99;
  record(8, ok,
         fmt("projection-noise scan recovers kappa^2 = %.4f +/- %.4f "
             "(true %.4f, 95%% CI), intercept %.4f +/- %.4f (true 0.5), "
             "R^2 = %.5f (> 0.99)",
             kappa2_hat, 1.96 * kappa2_se, kappa2_true, scan.fit.intercept,
             1.96 * scan.fit.intercept_se, scan.fit.r2));
}

// 9. Forward simulation and variance reconstruction round trip.
void criterion_9() {
  // Decay is kept in the chain; the reconstruction constants assume a
  // clean verification readout, so epsilon and electronic stay zero here.
  qtel::ProtocolParams params;
  params.kappa = 0.93;
  params.gain_x = 0.96;
  params.gain_p = 0.95;
  params.noise.beta = 0.2;
  params.noise.tau = 0.5;

  qtel::InputSpec input;
  input.kind = qtel::InputKind::kFixed;
  input.n_bar = 5.0;
  input.phase = 0.7;

  const std::size_t runs = 100000;
  const qtel::EnsembleResult res =
      qtel::run_ensemble(params, input, runs, 31415);

  const double d = qtel::decay_factor(params.noise);
  const double admix = (1.0 - d * d) * 0.5;
  const double true_x =
      d * d * qtel::model_variance(params.kappa, params.noise,
                                   params.gain_x) +
      admix;
  const double true_p =
      d * d * qtel::model_variance(params.kappa, params.noise,
                                   params.gain_p) +
      admix;

  // 3 sigma on the reconstructed variance, propagated from the sample
  // variance of the verification readout.
  const qtel::TeleportMoments exact = qtel::exact_moments(params, input);
  const double n = static_cast<double>(runs);
  const double scale = 4.0 / (params.kappa * params.kappa);
  const double tol_x =
      3.0 * scale * exact.cov(qtel::kMomYsVer, qtel::kMomYsVer) *
      std::sqrt(2.0 / (n - 1.0));
  const double tol_p =
      3.0 * scale * exact.cov(qtel::kMomYcVer, qtel::kMomYcVer) *
      std::sqrt(2.0 / (n - 1.0));

  const qtel::ReconResult recon = res.stats.recon;
  const double offset = qtel::reconstruction_offset(params.kappa);
  const double offset_expected =
      params.kappa * params.kappa / 12.0;
  const double offset_check =
      qtel::reconstruct_variance(res.stats.var_y_s_ver, params.kappa,
                                 qtel::ReconConstant::kMeasuredPort) -
      qtel::reconstruct_variance(res.stats.var_y_s_ver, params.kappa,
                                 qtel::ReconConstant::kBareOutput);
  const bool ok = std::abs(recon.sigma2_x - true_x) <= tol_x &&
                  std::abs(recon.sigma2_p - true_p) <= tol_p &&
                  offset == offset_expected &&
                  std::abs(offset_check - offset) <= 1e-15;
  record(9, ok,
         fmt("reconstructed sigma^2 = (%.4f, %.4f) vs true (%.4f, %.4f), "
             "3 sigma = (%.4f, %.4f); constant offset %.6f == kappa^2/12",
             recon.sigma2_x, recon.sigma2_p, true_x, true_p, tol_x, tol_p,
             offset));
}

// 10. Quadrature error budget of the seven quoted contributions.
void criterion_10() {
  const std::vector<double> deltas = {0.010, 0.0165, 0.001, 0.003,
                                      0.002, 0.012,  0.008};
  const double total = qtel::error_budget(deltas);
  const bool ok = std::abs(total - 0.0226) <= 0.0005;
  record(10, ok,
         fmt("error_budget(seven quoted deltas) = %.7f, required 0.0226 "
             "+/- 0.0005; the total is consistent with the rounded "
             "value 0.02 quoted alongside the individual entries",
             total));
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  std::printf("acceptance: %d/%d criteria passed\n", g_passed, g_total);
  return g_passed == g_total ? 0 : 1;
}
