#include "improved.hpp"

#include <Eigen/Dense>

#include <cmath>

#include "errors.hpp"

namespace qtel {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

double cascade_coeff(int n) { return 1.0 / std::sqrt(4.0 * n * n - 1.0); }

struct NoiseQuadratic {
  Eigen::MatrixXd a;   // V_add(g) = g^T a g - 2 b^T g + c
  Eigen::VectorXd b;
  double c = 0.0;
};

/// Residual measurement weights: coef(g) = w - L g. The antisqueezed
/// q-type variables run one mode past the measured span, because the top
/// measured mode picks up the cascade from mode n_modes as well, so L is
/// (n_modes + 1) x n_modes.
void build_coef_map(double kappa, int n_modes, Eigen::MatrixXd& l,
                    Eigen::VectorXd& w) {
  const double k2s = kappa * kappa / 4.0 * kInvSqrt2;
  l = Eigen::MatrixXd::Zero(n_modes + 1, n_modes);
  w = Eigen::VectorXd::Zero(n_modes + 1);
  w[0] = kappa * kInvSqrt2;
  for (int m = 0; m <= n_modes; ++m) {
    if (m < n_modes) l(m, m) += kInvSqrt2;
    if (m == 0) l(0, 0) += k2s;
    if (m - 1 >= 0 && m - 1 < n_modes) l(m, m - 1) += k2s * cascade_coeff(m);
    if (m + 1 < n_modes) l(m, m + 1) -= k2s * cascade_coeff(m + 1);
  }
}

NoiseQuadratic build_quadratic(double kappa, double squeeze_db, int n_modes) {
  const double v_y = 0.5 * std::pow(10.0, -squeeze_db / 10.0);
  const double v_q = 0.5 * std::pow(10.0, squeeze_db / 10.0);
  Eigen::MatrixXd l;
  Eigen::VectorXd w;
  build_coef_map(kappa, n_modes, l, w);

  NoiseQuadratic quad;
  quad.a = v_q * l.transpose() * l +
           (v_y / 2.0) * Eigen::MatrixXd::Identity(n_modes, n_modes);
  quad.a(0, 0) += kappa * kappa / 8.0;
  quad.b = v_q * l.transpose() * w;
  quad.b[0] += kappa / 4.0;
  quad.c = 0.5 + v_q * w.squaredNorm();
  return quad;
}

double added_noise(const NoiseQuadratic& quad, const Eigen::VectorXd& g) {
  return g.dot(quad.a * g) - 2.0 * quad.b.dot(g) + quad.c;
}

/// Minimizes g^T a g - 2 b^T g subject to |g| = 1 via the secular
/// equation: g = (a - mu I)^(-1) b with mu below the smallest eigenvalue
/// chosen so |g| = 1, plus the standard degenerate-case completion.
Eigen::VectorXd minimize_on_sphere(const NoiseQuadratic& quad) {
  const int n = static_cast<int>(quad.b.size());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(quad.a);
  if (eig.info() != Eigen::Success) {
    throw std::runtime_error("optimize_mode_gains: eigensolve failed");
  }
  const Eigen::VectorXd lambda = eig.eigenvalues();
  const Eigen::VectorXd bt = eig.eigenvectors().transpose() * quad.b;
  const double lmin = lambda[0];

  const auto norm_at = [&](double mu) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
      const double d = lambda[i] - mu;
      acc += bt[i] * bt[i] / (d * d);
    }
    return std::sqrt(acc);
  };

  const double edge = lmin - 1e-12 * std::max(1.0, std::abs(lmin));
  if (norm_at(edge) < 1.0) {
    // Degenerate case: b has no weight (or too little) on the bottom
    // eigenspace; complete the solution along the bottom eigenvector.
    Eigen::VectorXd y = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i) {
      const double d = lambda[i] - lmin;
      y[i] = d > 0.0 ? bt[i] / d : 0.0;
    }
    const double rest = y.squaredNorm();
    y[0] += std::sqrt(std::max(0.0, 1.0 - rest));
    return eig.eigenvectors() * y;
  }

  double lo = lmin - std::max(1.0, quad.b.norm()) - 1.0;  // |g(lo)| < 1
  double hi = edge;                                       // |g(hi)| > 1
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    (norm_at(mid) > 1.0 ? hi : lo) = mid;
  }
  const double mu = 0.5 * (lo + hi);
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) y[i] = bt[i] / (lambda[i] - mu);
  Eigen::VectorXd g = eig.eigenvectors() * y;
  // The constraint is enforced to bisection accuracy; make it exact.
  return g / g.norm();
}

void check_gains(const std::vector<double>& gains) {
  if (gains.empty()) {
    throw ConfigError("mode gains: need at least one mode");
  }
  double norm2 = 0.0;
  for (double g : gains) norm2 += g * g;
  if (std::abs(norm2 - 1.0) > 1e-6) {
    throw ConfigError("mode gains: weights must have unit norm");
  }
}

}  // namespace

double improved_protocol_fidelity(double kappa, double squeeze_db,
                                  const std::vector<double>& gains) {
  if (!(kappa > 0.0)) {
    throw ConfigError("improved_protocol_fidelity: kappa must be > 0");
  }
  check_gains(gains);
  const int n = static_cast<int>(gains.size());
  const NoiseQuadratic quad = build_quadratic(kappa, squeeze_db, n);
  const Eigen::VectorXd g =
      Eigen::Map<const Eigen::VectorXd>(gains.data(), n);
  return 1.0 / (1.0 + added_noise(quad, g));
}

std::vector<std::pair<double, double>> mode_envelope(
    const std::vector<double>& gains, int n_points) {
  check_gains(gains);
  if (n_points < 2) {
    throw ConfigError("mode_envelope: need at least two sample points");
  }
  std::vector<std::pair<double, double>> env;
  env.reserve(n_points);
  for (int i = 0; i < n_points; ++i) {
    const double t = static_cast<double>(i) / (n_points - 1);
    double a = 0.0;
    for (std::size_t n = 0; n < gains.size(); ++n) {
      a += gains[n] * std::sqrt(2.0 * n + 1.0) *
           std::legendre(static_cast<unsigned>(n), 2.0 * t - 1.0);
    }
    env.emplace_back(t, a);
  }
  return env;
}

ImprovedResult optimize_mode_gains(double kappa, double squeeze_db,
                                   int n_max) {
  if (!(kappa > 0.0)) {
    throw ConfigError("optimize_mode_gains: kappa must be > 0");
  }
  if (n_max < 0 || n_max > 64) {
    throw ConfigError("optimize_mode_gains: n_max must be in [0, 64]");
  }
  const int n_modes = n_max + 1;
  const NoiseQuadratic quad = build_quadratic(kappa, squeeze_db, n_modes);
  Eigen::VectorXd g = minimize_on_sphere(quad);
  // Both orientations satisfy the constraint; keep the cheaper one (the
  // secular solution already is, but the degenerate branch may not be).
  if (added_noise(quad, -g) < added_noise(quad, g)) g = -g;

  ImprovedResult result;
  result.gains.assign(g.data(), g.data() + n_modes);
  result.fidelity = 1.0 / (1.0 + added_noise(quad, g));
  result.envelope = mode_envelope(result.gains);
  return result;
}

}  // namespace qtel
