#include "fidelity.hpp"

#include <cmath>
#include <numbers>

#include "errors.hpp"
#include "leastsq.hpp"

namespace qtel {

namespace {

/// log I0 with the asymptotic form for large arguments, so the
/// phase-average stays finite for strongly displaced ensembles.
double log_bessel_i0(double x) {
  const double ax = std::abs(x);
  if (ax < 30.0) return std::log(std::cyl_bessel_i(0.0, ax));
  // I0(x) ~ e^x / sqrt(2 pi x) sum_k a_k / x^k; five terms leave a
  // relative error below 1e-8 everywhere past the switch point.
  const double u = 1.0 / ax;
  const double series =
      u * (0.125 +
           u * (0.0703125 +
                u * (0.0732421875 + u * 0.112152099609375)));
  return ax - 0.5 * std::log(2.0 * std::numbers::pi * ax) +
         std::log1p(series);
}

}  // namespace

double ensemble_fidelity(double n_avg, double gain_x, double gain_p,
                         double sigma2_x, double sigma2_p) {
  if (!(n_avg >= 0.0)) {
    throw ConfigError("ensemble_fidelity: n_avg must be >= 0");
  }
  const double sx = 1.0 + 2.0 * sigma2_x;
  const double sp = 1.0 + 2.0 * sigma2_p;
  if (!(sx > 0.0) || !(sp > 0.0)) {
    throw ConfigError("ensemble_fidelity: variances must exceed -1/2");
  }
  const double ax = 2.0 * n_avg * (1.0 - gain_x) * (1.0 - gain_x) / sx;
  const double ap = 2.0 * n_avg * (1.0 - gain_p) * (1.0 - gain_p) / sp;
  const double log_avg = -0.5 * (ax + ap) + log_bessel_i0(0.5 * (ax - ap));
  return 2.0 / std::sqrt(sx * sp) * std::exp(log_avg);
}

double classical_benchmark(double n_avg) {
  if (!(n_avg >= 0.0)) {
    throw ConfigError("classical_benchmark: n_avg must be >= 0");
  }
  return (1.0 + n_avg) / (1.0 + 2.0 * n_avg);
}

std::array<double, 3> fit_variance_vs_gain(
    const std::vector<std::pair<double, double>>& points) {
  std::vector<double> g;
  std::vector<double> v;
  g.reserve(points.size());
  v.reserve(points.size());
  for (const auto& [gain, var] : points) {
    g.push_back(gain);
    v.push_back(var);
  }
  const std::vector<double> c = polyfit(g, v, 2);
  return {c[2], c[1], c[0]};
}

GainOptimum optimize_gains(double n_avg, const std::array<double, 3>& quad) {
  if (!(n_avg >= 0.0)) {
    throw ConfigError("optimize_gains: n_avg must be >= 0");
  }
  const auto& [a, b, c] = quad;
  if (!(a > 0.0)) {
    throw ConfigError("optimize_gains: variance model must open upward");
  }
  const auto objective = [&](double g) {
    return a * g * g + b * g + c + n_avg * (1.0 - g) * (1.0 - g);
  };
  // Golden-section search on [0, 3]; the objective is strictly convex.
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = 0.0;
  double hi = 3.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = objective(x1);
  double f2 = objective(x2);
  while (hi - lo > 1e-10) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = objective(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = objective(x2);
    }
  }
  GainOptimum opt;
  opt.gain = 0.5 * (lo + hi);
  opt.variance = a * opt.gain * opt.gain + b * opt.gain + c;
  opt.fidelity = ensemble_fidelity(n_avg, opt.gain, opt.gain, opt.variance,
                                   opt.variance);
  return opt;
}

double error_budget(const std::vector<double>& deltas) {
  if (deltas.empty()) {
    throw ConfigError("error_budget: need at least one contribution");
  }
  double acc = 0.0;
  for (double d : deltas) {
    if (d < 0.0) {
      throw ConfigError("error_budget: contributions must be >= 0");
    }
    acc += d * d;
  }
  return std::sqrt(acc);
}

}  // namespace qtel
