/**
 * Small least-squares helpers used by the calibration fits.
 */
#pragma once

#include <vector>

namespace qtel {

/// Ordinary least-squares line fit with standard errors.
struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_se = 0.0;
  double intercept_se = 0.0;
  double r2 = 0.0;
};

LinearFit linear_fit(const std::vector<double>& x,
                     const std::vector<double>& y);

/// Polynomial coefficients c0 + c1 x + ... + c_degree x^degree minimizing
/// the squared residual (QR solve of the Vandermonde system).
std::vector<double> polyfit(const std::vector<double>& x,
                            const std::vector<double>& y, int degree);

double polyval(const std::vector<double>& coeffs, double x);

}  // namespace qtel
