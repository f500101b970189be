/**
 * Independent numeric oracles for the test suite. Everything here is
 * computed by brute-force quadrature or finite differences, never by
 * the closed forms under test. Quadrature nodes come from Golub-Welsch
 * eigendecompositions, so no tabulated constants are needed.
 */
#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace oracles {

inline constexpr double kPi = 3.14159265358979323846;

/// Gauss-Hermite rule: integrates f against exp(-t^2) on the real line.
struct QuadRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

inline QuadRule gauss_hermite(int n) {
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double off = std::sqrt(k / 2.0);
    j(k - 1, k) = off;
    j(k, k - 1) = off;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j);
  QuadRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int k = 0; k < n; ++k) {
    rule.nodes[k] = es.eigenvalues()[k];
    const double v0 = es.eigenvectors()(0, k);
    rule.weights[k] = std::sqrt(kPi) * v0 * v0;
  }
  return rule;
}

/// Gauss-Legendre rule on [-1, 1].
inline QuadRule gauss_legendre(int n) {
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double off = k / std::sqrt(4.0 * k * k - 1.0);
    j(k - 1, k) = off;
    j(k, k - 1) = off;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j);
  QuadRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int k = 0; k < n; ++k) {
    rule.nodes[k] = es.eigenvalues()[k];
    const double v0 = es.eigenvectors()(0, k);
    rule.weights[k] = 2.0 * v0 * v0;
  }
  return rule;
}

/// Overlap of two single-mode Gaussian states by direct phase-space
/// integration: 2 pi Int W1 W2, with W the product of normal densities
/// in (y, q). Simpson quadrature on a window wide enough for both.
inline double overlap_numeric(double mean_y1, double mean_q1, double var_y1,
                              double var_q1, double mean_y2, double mean_q2,
                              double var_y2, double var_q2) {
  const auto simpson_1d = [](double m1, double v1, double m2, double v2) {
    const double lo = std::min(m1 - 10.0 * std::sqrt(v1),
                               m2 - 10.0 * std::sqrt(v2));
    const double hi = std::max(m1 + 10.0 * std::sqrt(v1),
                               m2 + 10.0 * std::sqrt(v2));
    const int n = 4000;  // even
    const double h = (hi - lo) / n;
    double sum = 0.0;
    for (int i = 0; i <= n; ++i) {
      const double x = lo + i * h;
      const double g1 = std::exp(-(x - m1) * (x - m1) / (2.0 * v1)) /
                        std::sqrt(2.0 * kPi * v1);
      const double g2 = std::exp(-(x - m2) * (x - m2) / (2.0 * v2)) /
                        std::sqrt(2.0 * kPi * v2);
      const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
      sum += w * g1 * g2;
    }
    return sum * h / 3.0;
  };
  // The 2D integral factorizes; each factor is Int of two 1D normals.
  return 2.0 * kPi * simpson_1d(mean_y1, var_y1, mean_y2, var_y2) *
         simpson_1d(mean_q1, var_q1, mean_q2, var_q2);
}

/// Ensemble-average teleportation fidelity by brute force: coherent
/// states of photon number n_avg and uniformly random phase are sent
/// through a Gaussian channel with per-quadrature gains and output
/// variances, and the pure-state overlap is averaged over the phase.
inline double ring_average_fidelity(double n_avg, double gain_x,
                                    double gain_p, double sigma2_x,
                                    double sigma2_p) {
  const double sx = 0.5 + sigma2_x;
  const double sp = 0.5 + sigma2_p;
  const double amp = std::sqrt(2.0 * n_avg);
  const int n = 8192;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double theta = 2.0 * kPi * (i + 0.5) / n;
    const double my = amp * std::cos(theta);
    const double mq = amp * std::sin(theta);
    const double dy = (gain_x - 1.0) * my;
    const double dq = (gain_p - 1.0) * mq;
    sum += std::exp(-dy * dy / (2.0 * sx) - dq * dq / (2.0 * sp)) /
           std::sqrt(sx * sp);
  }
  return sum / n;
}

/*
 * Qubit-channel oracle. The channel maps a coherent state |alpha> to a
 * displaced thermal state with mean amplitude gain*alpha and quadrature
 * variance sigma2 = 1/2 + 2 s2. Fock matrix elements of the output are
 * computed by Gauss-Hermite quadrature over the thermal P distribution,
 * the action on |n><m| (n, m in {0, 1}) by Wirtinger finite differences
 * of exp(|alpha|^2) <a|E(|alpha><alpha|)|b>, and the average fidelity by
 * Gauss-Legendre x trapezoid integration over the Bloch sphere.
 */
class QubitChannelOracle {
 public:
  QubitChannelOracle(double gain, double s2)
      : gain_(gain), v_(s2), gh_(gauss_hermite(24)) {
    if (s2 < 0.0) throw std::invalid_argument("s2 must be >= 0");
  }

  /// <a|E(|n><m|)|b> for n, m, a, b in {0, 1}; index = 2n + m, 2a + b.
  std::array<std::array<std::complex<double>, 4>, 4> transfer() const {
    std::array<std::array<std::complex<double>, 4>, 4> t{};
    const double h = 1e-3;
    // Five-point stencil in alpha = x + iy around 0.
    const std::complex<double> i1(0.0, 1.0);
    const std::array<std::complex<double>, 5> alphas = {
        std::complex<double>(0.0, 0.0), std::complex<double>(h, 0.0),
        std::complex<double>(-h, 0.0), std::complex<double>(0.0, h),
        std::complex<double>(0.0, -h)};
    // f[ab][stencil]
    std::array<std::array<std::complex<double>, 5>, 4> f{};
    for (int s = 0; s < 5; ++s) {
      const std::complex<double> alpha = alphas[s];
      const double weight = std::exp(std::norm(alpha));
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
          f[2 * a + b][s] = weight * output_element(alpha, a, b);
        }
      }
    }
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        const auto& g = f[2 * a + b];
        const std::complex<double> dx = (g[1] - g[2]) / (2.0 * h);
        const std::complex<double> dy = (g[3] - g[4]) / (2.0 * h);
        const std::complex<double> lap =
            (g[1] + g[2] + g[3] + g[4] - 4.0 * g[0]) / (h * h);
        t[0][2 * a + b] = g[0];                       // |0><0|
        t[2][2 * a + b] = 0.5 * (dx - i1 * dy);       // |1><0|
        t[1][2 * a + b] = 0.5 * (dx + i1 * dy);       // |0><1|
        t[3][2 * a + b] = 0.25 * lap;                 // |1><1|
      }
    }
    return t;
  }

  /// Haar-average fidelity over pure qubit states in the {|0>,|1>} span.
  double average_fidelity() const {
    const auto t = transfer();
    const QuadRule gl = gauss_legendre(32);
    const int n_phi = 64;
    double total = 0.0;
    for (std::size_t iu = 0; iu < gl.nodes.size(); ++iu) {
      const double u = gl.nodes[iu];  // cos(theta)
      const double c0 = std::sqrt((1.0 + u) / 2.0);
      const double s0 = std::sqrt((1.0 - u) / 2.0);
      double phi_sum = 0.0;
      for (int ip = 0; ip < n_phi; ++ip) {
        const double phi = 2.0 * kPi * ip / n_phi;
        const std::complex<double> c[2] = {
            std::complex<double>(c0, 0.0),
            std::polar(s0, phi)};
        std::complex<double> fid(0.0, 0.0);
        for (int n = 0; n < 2; ++n)
          for (int m = 0; m < 2; ++m)
            for (int a = 0; a < 2; ++a)
              for (int b = 0; b < 2; ++b)
                fid += c[n] * std::conj(c[m]) * std::conj(c[a]) * c[b] *
                       t[2 * n + m][2 * a + b];
        phi_sum += fid.real();
      }
      total += gl.weights[iu] * (phi_sum / n_phi);
    }
    return total / 2.0;  // Int du / 2 averages over the sphere
  }

 private:
  /// <a|rho|b> of the displaced thermal output for coherent input alpha.
  std::complex<double> output_element(std::complex<double> alpha, int a,
                                      int b) const {
    const std::complex<double> gamma = gain_ * alpha;
    if (v_ < 1e-12) {  // pure coherent output
      return std::exp(-std::norm(gamma)) * ipow(gamma, a) *
             ipow(std::conj(gamma), b);
    }
    // Per-axis Gaussian times exp(-beta^2): complete the square.
    const double c = 1.0 + 1.0 / (2.0 * v_);
    const double mux = gamma.real() / (2.0 * v_ * c);
    const double muy = gamma.imag() / (2.0 * v_ * c);
    const double log_pre_x = c * mux * mux -
                             gamma.real() * gamma.real() / (2.0 * v_) -
                             0.5 * std::log(2.0 * kPi * v_) -
                             0.5 * std::log(c);
    const double log_pre_y = c * muy * muy -
                             gamma.imag() * gamma.imag() / (2.0 * v_) -
                             0.5 * std::log(2.0 * kPi * v_) -
                             0.5 * std::log(c);
    const double pre = std::exp(log_pre_x + log_pre_y);
    std::complex<double> sum(0.0, 0.0);
    const double root_c = std::sqrt(c);
    for (std::size_t i = 0; i < gh_.nodes.size(); ++i) {
      const double bx = mux + gh_.nodes[i] / root_c;
      for (std::size_t j = 0; j < gh_.nodes.size(); ++j) {
        const double by = muy + gh_.nodes[j] / root_c;
        const std::complex<double> beta(bx, by);
        sum += gh_.weights[i] * gh_.weights[j] * ipow(beta, a) *
               ipow(std::conj(beta), b);
      }
    }
    return pre * sum;
  }

  static std::complex<double> ipow(std::complex<double> z, int k) {
    return k == 0 ? std::complex<double>(1.0, 0.0) : z;
  }

  double gain_;
  double v_;  // thermal P-function variance per beta axis (= s2)
  QuadRule gh_;
};

}  // namespace oracles
