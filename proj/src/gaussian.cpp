#include "gaussian.hpp"

#include <cmath>

#include "errors.hpp"

namespace qtel {

ModeState make_vacuum() { return ModeState{}; }

ModeState make_coherent(double n_bar, double phase) {
  if (!(n_bar >= 0.0)) {
    throw ConfigError("coherent state needs mean photon number >= 0");
  }
  const double amp = std::sqrt(2.0 * n_bar);
  return ModeState{amp * std::cos(phase), amp * std::sin(phase), kVacuumVar,
                   kVacuumVar};
}

ModeState make_squeezed_vacuum(double squeeze_db) {
  const double factor = std::pow(10.0, squeeze_db / 10.0);
  return ModeState{0.0, 0.0, kVacuumVar / factor, kVacuumVar * factor};
}

double mean_photon_number(const ModeState& state) {
  return 0.5 * (state.mean_y * state.mean_y + state.mean_q * state.mean_q +
                state.var_y + state.var_q - 1.0);
}

double overlap_fidelity(const ModeState& a, const ModeState& b) {
  const double sy = a.var_y + b.var_y;
  const double sq = a.var_q + b.var_q;
  if (!(sy > 0.0) || !(sq > 0.0)) {
    throw ConfigError("overlap_fidelity needs positive summed variances");
  }
  const double dy = a.mean_y - b.mean_y;
  const double dq = a.mean_q - b.mean_q;
  return std::exp(-0.5 * dy * dy / sy - 0.5 * dq * dq / sq) /
         std::sqrt(sy * sq);
}

SystemState SystemState::initial(const ModeState& input,
                                 const ModeState& atoms) {
  SystemState state;
  state.mean[kY] = input.mean_y;
  state.mean[kQ] = input.mean_q;
  state.mean[kXa] = atoms.mean_y;
  state.mean[kPa] = atoms.mean_q;
  state.cov(kY, kY) = input.var_y;
  state.cov(kQ, kQ) = input.var_q;
  for (int i = kYc; i <= kVs; ++i) state.cov(i, i) = kVacuumVar;
  state.cov(kXa, kXa) = atoms.var_y;
  state.cov(kPa, kPa) = atoms.var_q;
  return state;
}

std::pair<double, double> sample(const ModeState& state, Rng& rng) {
  if (state.var_y < 0.0 || state.var_q < 0.0) {
    throw std::runtime_error("sample: negative variance");
  }
  const double y = rng.normal(state.mean_y, std::sqrt(state.var_y));
  const double q = rng.normal(state.mean_q, std::sqrt(state.var_q));
  return {y, q};
}

Vec10 sample(const SystemState& state, Rng& rng) {
  // Symmetric square root via the eigendecomposition; tolerates singular
  // covariances, rejects indefinite ones.
  Eigen::SelfAdjointEigenSolver<Mat10> eig(state.cov);
  if (eig.info() != Eigen::Success) {
    throw std::runtime_error("sample: eigendecomposition failed");
  }
  const double scale = std::max(1.0, state.cov.diagonal().maxCoeff());
  Vec10 lambda = eig.eigenvalues();
  for (int i = 0; i < kNumVars; ++i) {
    if (lambda[i] < -1e-9 * scale) {
      throw std::runtime_error("sample: covariance not positive semidefinite");
    }
    lambda[i] = std::sqrt(std::max(lambda[i], 0.0));
  }
  Vec10 z;
  for (int i = 0; i < kNumVars; ++i) z[i] = rng.normal();
  return state.mean + eig.eigenvectors() * lambda.asDiagonal() * z;
}

}  // namespace qtel
