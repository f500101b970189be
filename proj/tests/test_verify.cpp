#include <cmath>
#include <utility>
#include <vector>

#include "doctest.h"
#include "errors.hpp"
#include "gaussian.hpp"
#include "interaction.hpp"
#include "rng.hpp"
#include "stats.hpp"
#include "verify.hpp"

using namespace qtel;
using doctest::Approx;

namespace {

// Forward model for the verification readout variance: a quadrature stored
// with variance sigma2, read through a pulse with loss epsilon and
// electronic fraction f_el.
double readout_variance(double kappa, double sigma2, double epsilon,
                        double f_el) {
  const double s2 = 1.0 - epsilon;
  const double k4 = std::pow(kappa, 4);
  return s2 * (0.25 + k4 / 48.0 + kappa * kappa / 4.0 * sigma2) +
         epsilon / 4.0 + 0.25 + f_el / 2.0;
}

}  // namespace

TEST_SUITE("verify") {
  TEST_CASE("port composition on a hand-built sample") {
    Vec10 pt = Vec10::Zero();
    pt[kY] = 0.4;
    pt[kQ] = -0.3;
    pt[kYc] = 1.0;
    pt[kQc] = -0.5;
    pt[kYs] = 0.8;
    pt[kQs] = 0.2;
    const double y_lo = 0.15;
    const double q_lo = -0.6;
    const MeasuredPorts ports = measure_ports(pt, y_lo, q_lo);
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(ports.y_c == Approx(r * 1.0 + 0.5 * (q_lo - pt[kQ])).epsilon(1e-14));
    CHECK(ports.y_s == Approx(r * 0.8 + 0.5 * (pt[kY] + y_lo)).epsilon(1e-14));
    CHECK(ports.q_c == Approx(r * -0.5 - 0.5 * (pt[kY] - y_lo)).epsilon(1e-14));
    CHECK(ports.q_s == Approx(r * 0.2 - 0.5 * (q_lo + pt[kQ])).epsilon(1e-14));
  }

  TEST_CASE("readout means track the stored quadratures") {
    const double kappa = 0.93;
    const std::size_t n = 120000;
    Rng rng(20240311);
    std::vector<double> yc(n), ys(n);
    for (std::size_t i = 0; i < n; ++i) {
      const VerifyOutcome v =
          verify_readout_sample(1.3, -0.8, kappa, NoiseParams{}, rng);
      yc[i] = v.y_c_ver;
      ys[i] = v.y_s_ver;
    }
    // y_s channel reads X_A, y_c channel reads P_A, both with gain kappa/2
    const double var = readout_variance(kappa, 0.0, 0.0, 0.0);
    CHECK(std::fabs(stats::mean(ys) - kappa / 2.0 * 1.3) <
          5 * stats::mean_se(var, n));
    CHECK(std::fabs(stats::mean(yc) - kappa / 2.0 * -0.8) <
          5 * stats::mean_se(var, n));
  }

  TEST_CASE("readout variance from a Gaussian atomic mode") {
    const double kappa = 0.93;
    ModeState atoms;
    atoms.var_y = 1.20;  // X_A
    atoms.var_q = 1.12;  // P_A
    const std::size_t n = 400000;
    Rng rng(5150);
    std::vector<double> ys(n), yc(n);
    for (std::size_t i = 0; i < n; ++i) {
      const VerifyOutcome v = verifying_readout(atoms, kappa, NoiseParams{}, rng);
      ys[i] = v.y_s_ver;
      yc[i] = v.y_c_ver;
    }
    const double expect_s = readout_variance(kappa, 1.20, 0.0, 0.0);
    const double expect_c = readout_variance(kappa, 1.12, 0.0, 0.0);
    CHECK(expect_s == Approx(0.775054).epsilon(1e-5));
    CHECK(expect_c == Approx(0.757756).epsilon(1e-5));
    CHECK(std::fabs(stats::variance(ys) - expect_s) <
          5 * stats::var_se(expect_s, n));
    CHECK(std::fabs(stats::variance(yc) - expect_c) <
          5 * stats::var_se(expect_c, n));
  }

  TEST_CASE("readout variance with loss and electronic noise") {
    const double kappa = 0.93;
    NoiseParams noise;
    noise.epsilon = 0.1;
    noise.electronic = 0.2;
    const std::size_t n = 400000;
    Rng rng(6021023);
    std::vector<double> ys(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double xa = rng.normal(0.0, 1.0);
      const double pa = rng.normal(0.0, 1.0);
      const VerifyOutcome v = verify_readout_sample(xa, pa, kappa, noise, rng);
      ys[i] = v.y_s_ver;
    }
    const double expect = readout_variance(kappa, 1.0, 0.1, 0.2);
    CHECK(expect == Approx(0.808628).epsilon(1e-5));
    CHECK(std::fabs(stats::variance(ys) - expect) <
          5 * stats::var_se(expect, n));
  }

  TEST_CASE("variance reconstruction round trip") {
    for (const double kappa : {0.5, 0.93, 1.3}) {
      for (const double sigma2 : {0.5, 0.9, 1.7}) {
        const double measured = readout_variance(kappa, sigma2, 0.0, 0.0);
        CHECK(reconstruct_variance(measured, kappa,
                                   ReconConstant::kMeasuredPort) ==
              Approx(sigma2).epsilon(1e-12));
      }
    }
    CHECK(reconstruct_variance(0.7750, 0.93, ReconConstant::kMeasuredPort) ==
          Approx(1.19979).epsilon(1e-4));
    CHECK_THROWS_AS(
        reconstruct_variance(0.8, 0.0, ReconConstant::kMeasuredPort),
        ConfigError);
  }

  TEST_CASE("the two back-action constants differ by kappa^2/12") {
    for (const double kappa : {0.5, 0.93, 2.3}) {
      const double a =
          reconstruct_variance(0.9, kappa, ReconConstant::kMeasuredPort);
      const double b =
          reconstruct_variance(0.9, kappa, ReconConstant::kBareOutput);
      CHECK(a - b == Approx(kappa * kappa / 12.0).epsilon(1e-12));
      CHECK(reconstruction_offset(kappa) ==
            Approx(kappa * kappa / 12.0).epsilon(1e-14));
    }
    const ReconResult both =
        reconstruct_variances(0.78, 0.76, 0.93, ReconConstant::kMeasuredPort);
    CHECK(both.sigma2_x ==
          Approx(reconstruct_variance(0.78, 0.93,
                                      ReconConstant::kMeasuredPort)));
    CHECK(both.sigma2_p ==
          Approx(reconstruct_variance(0.76, 0.93,
                                      ReconConstant::kMeasuredPort)));
  }

  TEST_CASE("gain slope estimation") {
    std::vector<std::pair<double, double>> data;
    for (int i = -10; i <= 10; ++i) {
      const double x = 0.4 * i;
      data.emplace_back(x, 0.42315 * x);
    }
    const GainEstimate est = estimate_gain_slope(data, 0.93, 0.91);
    CHECK(est.slope == Approx(0.42315).epsilon(1e-12));
    CHECK(est.gain == Approx(2.0 * 0.42315 / (0.93 * 0.91)).epsilon(1e-12));
    CHECK(est.gain == Approx(1.0).epsilon(1e-9));

    CHECK_THROWS_AS(estimate_gain_slope({}, 0.93, 0.91), ConfigError);
    CHECK_THROWS_AS(estimate_gain_slope(data, 0.0, 0.91), ConfigError);
    CHECK_THROWS_AS(estimate_gain_slope(data, 0.93, 0.0), ConfigError);
    CHECK_THROWS_AS(
        estimate_gain_slope({{0.0, 1.0}, {0.0, -1.0}}, 0.93, 0.91),
        ConfigError);
  }

  TEST_CASE("tomographic reconstruction from verification samples") {
    const double kappa = 0.93;
    const std::size_t n = 150000;
    Rng rng(31337);
    std::vector<VerifyOutcome> samples;
    samples.reserve(n);
    const double mean_x = 0.9, mean_p = -0.4;
    const double var_x = 1.05, var_p = 0.85;
    for (std::size_t i = 0; i < n; ++i) {
      const double xa = rng.normal(mean_x, std::sqrt(var_x));
      const double pa = rng.normal(mean_p, std::sqrt(var_p));
      samples.push_back(
          verify_readout_sample(xa, pa, kappa, NoiseParams{}, rng));
    }
    const ModeState est =
        tomographic_reconstruct(samples, kappa, ReconConstant::kMeasuredPort);
    const double read_var_x = readout_variance(kappa, var_x, 0.0, 0.0);
    const double read_var_p = readout_variance(kappa, var_p, 0.0, 0.0);
    const double half_k = kappa / 2.0;
    CHECK(std::fabs(est.mean_y - mean_x) <
          5 * stats::mean_se(read_var_x, n) / half_k);
    CHECK(std::fabs(est.mean_q - mean_p) <
          5 * stats::mean_se(read_var_p, n) / half_k);
    CHECK(std::fabs(est.var_y - var_x) <
          5 * stats::var_se(read_var_x, n) / (half_k * half_k));
    CHECK(std::fabs(est.var_q - var_p) <
          5 * stats::var_se(read_var_p, n) / (half_k * half_k));
    CHECK_THROWS_AS(
        tomographic_reconstruct({}, kappa, ReconConstant::kMeasuredPort),
        ConfigError);
  }

  TEST_CASE("storage decay contracts means and admixes vacuum") {
    NoiseParams noise;
    noise.beta = 0.3;
    noise.tau = 0.3;
    const double d = decay_factor(noise);
    CHECK(d == Approx(std::exp(-0.09)).epsilon(1e-14));
    const auto [mx, mp] = decay_means(2.0, -1.5, 0.3, 0.3);
    CHECK(mx == Approx(2.0 * d).epsilon(1e-14));
    CHECK(mp == Approx(-1.5 * d).epsilon(1e-14));

    ModeState atoms;
    atoms.mean_y = 2.0;
    atoms.mean_q = -1.5;
    atoms.var_y = 1.4;
    atoms.var_q = 0.5;
    const ModeState full = decay_mode(atoms, 0.3, 0.3, true);
    CHECK(full.mean_y == Approx(2.0 * d).epsilon(1e-14));
    CHECK(full.var_y ==
          Approx(d * d * 1.4 + (1.0 - d * d) * 0.5).epsilon(1e-14));
    // vacuum is a fixed point of the decoherence channel
    CHECK(full.var_q == Approx(0.5).epsilon(1e-14));

    const ModeState bare = decay_mode(atoms, 0.3, 0.3, false);
    CHECK(bare.var_y == Approx(d * d * 1.4).epsilon(1e-14));
  }
}
