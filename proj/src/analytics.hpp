/**
 * Exact Gaussian moments for the protocol pipeline.
 *
 * Every recorded quantity is an affine function of independent Gaussian
 * sources (initial variables, loss and sideband vacua, electronic noise,
 * decay admixture, verification pulse). Propagating coefficient vectors
 * through the same maps the sampler applies gives closed-form means and
 * covariances to cross-check Monte Carlo ensembles.
 */
#pragma once

#include <Eigen/Dense>

#include <array>

#include "teleport.hpp"

namespace qtel {

/// Row order of exact_moments outputs.
enum MomentIndex : int {
  kMomB1 = 0,
  kMomB2 = 1,
  kMomXTele = 2,
  kMomPTele = 3,
  kMomYcVer = 4,
  kMomYsVer = 5,
  kNumMoments = 6,
};

struct TeleportMoments {
  Eigen::Matrix<double, 6, 1> mean = Eigen::Matrix<double, 6, 1>::Zero();
  Eigen::Matrix<double, 6, 6> cov = Eigen::Matrix<double, 6, 6>::Zero();
};

/// Exact means and covariances of (B1, B2, X_tele, P_tele, y_c_ver,
/// y_s_ver) under `params` for the given input ensemble.
TeleportMoments exact_moments(const ProtocolParams& params,
                              const InputSpec& input);

/// Coefficients {a, b, c} of the teleported variance as a function of the
/// feedback gain, Var(X_tele) = a g^2 + b g + c, for a fixed input state.
/// Holds identically for the P quadrature.
std::array<double, 3> variance_quadratic(double kappa,
                                         const NoiseParams& noise);

/// Var(X_tele) at gain g from the quadratic model.
double model_variance(double kappa, const NoiseParams& noise, double g);

}  // namespace qtel
