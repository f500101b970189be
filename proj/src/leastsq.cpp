#include "leastsq.hpp"

#include <Eigen/Dense>

#include <cmath>

#include "errors.hpp"

namespace qtel {

LinearFit linear_fit(const std::vector<double>& x,
                     const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n != y.size() || n < 3) {
    throw ConfigError("linear_fit: need matching x/y with >= 3 points");
  }
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw ConfigError("linear_fit: x values have no spread");

  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ssr = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - fit.intercept - fit.slope * x[i];
    ssr += r * r;
  }
  const double dof = static_cast<double>(n) - 2.0;
  const double s2 = ssr / dof;
  fit.slope_se = std::sqrt(s2 / sxx);
  fit.intercept_se =
      std::sqrt(s2 * (1.0 / static_cast<double>(n) + mx * mx / sxx));
  fit.r2 = syy > 0.0 ? 1.0 - ssr / syy : 1.0;
  return fit;
}

std::vector<double> polyfit(const std::vector<double>& x,
                            const std::vector<double>& y, int degree) {
  const std::size_t n = x.size();
  if (degree < 0) throw ConfigError("polyfit: degree must be >= 0");
  if (n != y.size() || n < static_cast<std::size_t>(degree) + 1) {
    throw ConfigError("polyfit: need at least degree + 1 matching points");
  }
  Eigen::MatrixXd v(n, degree + 1);
  Eigen::VectorXd rhs(n);
  for (std::size_t i = 0; i < n; ++i) {
    double p = 1.0;
    for (int j = 0; j <= degree; ++j) {
      v(i, j) = p;
      p *= x[i];
    }
    rhs(i) = y[i];
  }
  const Eigen::VectorXd c = v.colPivHouseholderQr().solve(rhs);
  return std::vector<double>(c.data(), c.data() + degree + 1);
}

double polyval(const std::vector<double>& coeffs, double x) {
  double acc = 0.0;
  for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
  return acc;
}

}  // namespace qtel
