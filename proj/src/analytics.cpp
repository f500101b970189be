#include "analytics.hpp"

#include <cmath>

namespace qtel {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

// Source layout for the affine propagation. Variances in comments.
enum Source : int {
  kSrcInit = 0,        // 10: initial variables (input, bus, atoms)
  kSrcLoss = 10,       // 6: loss vacua of the first pass
  kSrcLower = 16,      // 2: input-beam lower-sideband pair
  kSrcBellEl = 18,     // 4: electronic noise on the four ports
  kSrcAdmix = 22,      // 2: decay admixture
  kSrcVerInit = 24,    // 8: verification-pulse light variables
  kSrcVerLoss = 32,    // 6: loss vacua of the verification pass
  kSrcVerLower = 38,   // 2: verification lower-sideband pair
  kSrcVerEl = 40,      // 2: electronic noise on the verification ports
  kNumSources = 42,
};

using Row = Eigen::Matrix<double, 1, kNumSources>;
using StateRows = Eigen::Matrix<double, kNumVars, kNumSources>;

Row unit(int index) {
  Row r = Row::Zero();
  r[index] = 1.0;
  return r;
}

struct PortRows {
  Row y_c, y_s, q_c, q_s;
};

/// Mirror of measure_ports on coefficient rows.
PortRows port_rows(const StateRows& rows, int lower_base) {
  PortRows p;
  const Row y_lower = unit(lower_base);
  const Row q_lower = unit(lower_base + 1);
  p.y_c = kInvSqrt2 * rows.row(kYc) + 0.5 * (q_lower - rows.row(kQ));
  p.y_s = kInvSqrt2 * rows.row(kYs) + 0.5 * (rows.row(kY) + y_lower);
  p.q_c = kInvSqrt2 * rows.row(kQc) - 0.5 * (rows.row(kY) - y_lower);
  p.q_s = kInvSqrt2 * rows.row(kQs) - 0.5 * (q_lower + rows.row(kQ));
  return p;
}

void apply_loss_rows(StateRows& rows, double epsilon, int loss_base) {
  const double t = std::sqrt(1.0 - epsilon);
  const double r = std::sqrt(epsilon);
  for (int i = kYc; i <= kVs; ++i) {
    rows.row(i) *= t;
    rows(i, loss_base + (i - kYc)) += r;
  }
}

}  // namespace

TeleportMoments exact_moments(const ProtocolParams& params,
                              const InputSpec& input) {
  const double eps = params.noise.epsilon;
  const double f_el = params.noise.electronic;
  const double d = decay_factor(params.noise);

  // Source means and variances.
  Eigen::Matrix<double, kNumSources, 1> mu =
      Eigen::Matrix<double, kNumSources, 1>::Zero();
  Eigen::Matrix<double, kNumSources, 1> var =
      Eigen::Matrix<double, kNumSources, 1>::Constant(kVacuumVar);
  if (input.kind == InputKind::kFixed) {
    const ModeState mode = make_coherent(input.n_bar, input.phase);
    mu[kSrcInit + static_cast<int>(kY)] = mode.mean_y;
    mu[kSrcInit + static_cast<int>(kQ)] = mode.mean_q;
  } else {
    var[kSrcInit + static_cast<int>(kY)] += input.n_avg;
    var[kSrcInit + static_cast<int>(kQ)] += input.n_avg;
  }
  for (int i = 0; i < 4; ++i) var[kSrcBellEl + i] = f_el * kVacuumVar;
  const double admix_var =
      params.decay_admix ? (1.0 - d * d) * kVacuumVar : 0.0;
  var[kSrcAdmix] = admix_var;
  var[kSrcAdmix + 1] = admix_var;
  var[kSrcVerEl] = f_el * kVacuumVar;
  var[kSrcVerEl + 1] = f_el * kVacuumVar;

  // First pass.
  StateRows rows = StateRows::Zero();
  for (int i = 0; i < kNumVars; ++i) rows(i, kSrcInit + i) = 1.0;
  rows = entangling_matrix(params.kappa) * rows;
  apply_loss_rows(rows, eps, kSrcLoss);

  const PortRows bell = port_rows(rows, kSrcLower);
  const Row b1 =
      (bell.y_s + unit(kSrcBellEl + 1)) - (bell.q_c + unit(kSrcBellEl + 2));
  const Row b2 =
      -((bell.y_c + unit(kSrcBellEl + 0)) + (bell.q_s + unit(kSrcBellEl + 3)));

  const Row x_tele = rows.row(kXa) + params.gain_x * b1;
  const Row p_tele = rows.row(kPa) + params.gain_p * b2;
  const Row x_read = d * x_tele + unit(kSrcAdmix);
  const Row p_read = d * p_tele + unit(kSrcAdmix + 1);

  // Verification pass on a fresh pulse.
  StateRows ver = StateRows::Zero();
  for (int i = kY; i <= kVs; ++i) ver.row(i) = unit(kSrcVerInit + (i - kY));
  ver.row(kXa) = x_read;
  ver.row(kPa) = p_read;
  ver = entangling_matrix(params.kappa) * ver;
  apply_loss_rows(ver, eps, kSrcVerLoss);

  const PortRows vports = port_rows(ver, kSrcVerLower);
  const Row y_c_ver = vports.y_c + unit(kSrcVerEl);
  const Row y_s_ver = -(vports.y_s + unit(kSrcVerEl + 1));

  Eigen::Matrix<double, kNumMoments, kNumSources> out;
  out.row(kMomB1) = b1;
  out.row(kMomB2) = b2;
  out.row(kMomXTele) = x_tele;
  out.row(kMomPTele) = p_tele;
  out.row(kMomYcVer) = y_c_ver;
  out.row(kMomYsVer) = y_s_ver;

  TeleportMoments moments;
  moments.mean = out * mu;
  moments.cov = out * var.asDiagonal() * out.transpose();
  return moments;
}

std::array<double, 3> variance_quadratic(double kappa,
                                         const NoiseParams& noise) {
  const double s2 = 1.0 - noise.epsilon;
  const double k2 = kappa * kappa;
  const double bus = 1.0 + k2 / 4.0;
  const double a = s2 * k2 / 8.0 + s2 * bus * bus / 4.0 + s2 / 4.0 +
                   s2 * k2 * k2 / 192.0 + noise.epsilon / 2.0 +
                   noise.electronic + 0.5;
  const double b = -std::sqrt(s2) * kappa * (1.0 + k2 / 8.0);
  const double c = 0.5 + k2 / 4.0;
  return {a, b, c};
}

double model_variance(double kappa, const NoiseParams& noise, double g) {
  const auto [a, b, c] = variance_quadratic(kappa, noise);
  return a * g * g + b * g + c;
}

}  // namespace qtel
