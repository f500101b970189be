#include "interaction.hpp"

#include <cmath>

#include "errors.hpp"

namespace qtel {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

/// Cascade coefficient c_n = 1/sqrt(4n^2 - 1).
double cascade_coeff(int n) { return 1.0 / std::sqrt(4.0 * n * n - 1.0); }

}  // namespace

double compute_kappa(const CouplingParams& p) {
  if (p.n_photons < 0.0 || p.n_atoms < 0.0) {
    throw ConfigError("compute_kappa: particle numbers must be >= 0");
  }
  if (!(p.area > 0.0) || !(p.delta > 0.0) || !(p.gamma > 0.0) ||
      !(p.sigma > 0.0) || !(p.a1 > 0.0) || !(p.f > 0.0)) {
    throw ConfigError("compute_kappa: a1, f, sigma, gamma, area, delta must be > 0");
  }
  return p.a1 * std::sqrt(p.n_photons * p.n_atoms) * p.f * p.sigma * p.gamma /
         (p.area * p.delta);
}

double decay_factor(const NoiseParams& noise) {
  if (noise.beta < 0.0 || noise.tau < 0.0) {
    throw ConfigError("decay_factor: beta and tau must be >= 0");
  }
  return std::exp(-noise.beta * noise.tau);
}

Mat10 entangling_matrix(double kappa) {
  if (!(kappa >= 0.0)) throw ConfigError("entangling_matrix: kappa must be >= 0");
  const double k1 = kappa * kInvSqrt2;
  const double k2 = kappa * kappa / 4.0;
  Mat10 s = Mat10::Identity();
  s(kYc, kQs) = k2;
  s(kYc, kVs) = k2 * cascade_coeff(1);
  s(kYc, kPa) = k1;
  s(kYs, kQc) = -k2;
  s(kYs, kVc) = -k2 * cascade_coeff(1);
  s(kYs, kXa) = -k1;
  s(kXa, kQc) = k1;
  s(kPa, kQs) = k1;
  return s;
}

SystemState entangling_pass(const SystemState& state, double kappa) {
  const Mat10 s = entangling_matrix(kappa);
  SystemState out;
  out.mean = s * state.mean;
  out.cov = s * state.cov * s.transpose();
  return out;
}

Vec10 entangling_pass(const Vec10& point, double kappa) {
  return entangling_matrix(kappa) * point;
}

SystemState apply_loss(const SystemState& state, double epsilon) {
  if (!(epsilon >= 0.0) || !(epsilon < 1.0)) {
    throw ConfigError("apply_loss: epsilon must be in [0, 1)");
  }
  const double t = std::sqrt(1.0 - epsilon);
  SystemState out = state;
  for (int i = kYc; i <= kVs; ++i) {
    out.mean[i] *= t;
    for (int j = 0; j < kNumVars; ++j) {
      out.cov(i, j) *= t;
      out.cov(j, i) *= t;
    }
    // The scaling above multiplied (i,i) by t twice; add the vacuum port.
    out.cov(i, i) += epsilon * kVacuumVar;
  }
  return out;
}

Vec10 apply_loss(const Vec10& point, double epsilon, Rng& rng) {
  if (!(epsilon >= 0.0) || !(epsilon < 1.0)) {
    throw ConfigError("apply_loss: epsilon must be in [0, 1)");
  }
  const double t = std::sqrt(1.0 - epsilon);
  const double r = std::sqrt(epsilon);
  const double sd = std::sqrt(kVacuumVar);
  Vec10 out = point;
  // Fixed draw order (y_c, y_s, q_c, q_s, v_c, v_s); draws happen even for
  // epsilon = 0 so the stream layout does not depend on parameter values.
  for (int i = kYc; i <= kVs; ++i) {
    const double vac = rng.normal(0.0, sd);
    out[i] = t * out[i] + r * vac;
  }
  return out;
}

ModeState two_cell_pass(const ModeState& light, double kappa,
                        double joint_spin_var) {
  if (joint_spin_var < 0.0) {
    throw ConfigError("two_cell_pass: joint spin variance must be >= 0");
  }
  ModeState out = light;
  out.var_y += kappa * kappa * joint_spin_var;
  return out;
}

double two_cell_pass(double y_c_in, double kappa, double p_joint) {
  return y_c_in + kappa * p_joint;
}

HigherModeState HigherModeState::vacuum(int n_max) {
  if (n_max < 0) throw ConfigError("HigherModeState: n_max must be >= 0");
  HigherModeState state;
  state.n_max = n_max;
  const int dim = 4 * (n_max + 1);
  state.mean = Eigen::VectorXd::Zero(dim);
  state.cov = Eigen::MatrixXd::Identity(dim, dim) * kVacuumVar;
  return state;
}

Eigen::MatrixXd higher_order_matrix(double kappa, int n_max) {
  if (n_max < 0) throw ConfigError("higher_order_matrix: n_max must be >= 0");
  if (!(kappa >= 0.0)) throw ConfigError("higher_order_matrix: kappa must be >= 0");
  const int dim = 4 * (n_max + 1);
  const double k2 = kappa * kappa / 4.0;
  // Per-mode variable offsets within the layout.
  constexpr int yc = 0, ys = 1, qc = 2, qs = 3;
  Eigen::MatrixXd s = Eigen::MatrixXd::Identity(dim, dim);
  for (int n = 0; n <= n_max; ++n) {
    const int row = 4 * n;
    if (n + 1 <= n_max) {
      const double c = cascade_coeff(n + 1);
      s(row + yc, 4 * (n + 1) + qs) += k2 * c;
      s(row + ys, 4 * (n + 1) + qc) -= k2 * c;
    }
    if (n >= 1) {
      const double c = cascade_coeff(n);
      s(row + yc, 4 * (n - 1) + qs) -= k2 * c;
      s(row + ys, 4 * (n - 1) + qc) += k2 * c;
    }
  }
  return s;
}

HigherModeState higher_order_pass(const HigherModeState& state, double kappa) {
  const Eigen::MatrixXd s = higher_order_matrix(kappa, state.n_max);
  HigherModeState out;
  out.n_max = state.n_max;
  out.mean = s * state.mean;
  out.cov = s * state.cov * s.transpose();
  return out;
}

Mat10 symplectic_form_10() {
  Mat10 omega = Mat10::Zero();
  const auto pair = [&omega](int a, int b) {
    omega(a, b) = 1.0;
    omega(b, a) = -1.0;
  };
  pair(kY, kQ);
  pair(kYc, kQc);
  pair(kYs, kQs);
  pair(kXa, kPa);
  // (v_c, v_s) rows stay zero: their conjugate partners are untracked.
  return omega;
}

Eigen::MatrixXd symplectic_form_modes(int n_max) {
  const int dim = 4 * (n_max + 1);
  constexpr int yc = 0, ys = 1, qc = 2, qs = 3;
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(dim, dim);
  for (int n = 0; n <= n_max; ++n) {
    const int base = 4 * n;
    omega(base + yc, base + qc) = 1.0;
    omega(base + qc, base + yc) = -1.0;
    omega(base + ys, base + qs) = 1.0;
    omega(base + qs, base + ys) = -1.0;
  }
  return omega;
}

double symplectic_defect(const Eigen::MatrixXd& map,
                         const Eigen::MatrixXd& form) {
  return (map * form * map.transpose() - form).cwiseAbs().maxCoeff();
}

}  // namespace qtel
