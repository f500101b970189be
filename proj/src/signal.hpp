/**
 * Synthetic photocurrent traces and lock-in processing.
 *
 * A trace carries the cos/sin quadrature pair at the analysis frequency
 * embedded in the shot-noise continuum: the in-band pair is drawn once
 * per trace (vacuum variance 1/2), the continuum is white noise with its
 * component at the analysis frequency projected out, and electronic noise
 * is power-independent white noise on top. Shot variance scales linearly
 * with optical power; lock-in integrals against the matched cos/sin
 * references recover the quadratures with unit gain after normalizing by
 * the vacuum shot-noise level.
 */
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "leastsq.hpp"
#include "rng.hpp"

namespace qtel {

struct TraceParams {
  double frequency_hz = 322000.0;     ///< analysis (sideband) frequency
  double duration_s = 0.002;          ///< pulse duration
  double sample_rate_hz = 2576000.0;  ///< an integer number of samples/cycle
  double power = 1.0;                 ///< optical power in reference units
  double electronic = 0.0;            ///< electronic noise power (same units)
};

/// One photocurrent trace around the given quadrature means.
std::vector<double> synthesize_photocurrent(double mean_y_c, double mean_y_s,
                                            const TraceParams& params,
                                            Rng& rng);

/// Raw lock-in integrals (integral of trace x cos, trace x sin dt).
std::pair<double, double> lockin_demodulate(const std::vector<double>& trace,
                                            double frequency_hz,
                                            double sample_rate_hz);

/// Vacuum RMS of a raw lock-in integral at this power and duration.
double shot_noise_reference(double power, double duration_s);

/// Vacuum RMS estimated from measured vacuum-trace integrals (both
/// quadratures pooled).
double shot_noise_reference(
    const std::vector<std::pair<double, double>>& vacuum_integrals);

/// Calibrated demodulation: quadrature estimates with unit gain and
/// vacuum variance 1/2.
std::pair<double, double> demodulate_calibrated(
    const std::vector<double>& trace, double frequency_hz,
    double sample_rate_hz, double vacuum_rms);

struct ScanPoint {
  double x = 0.0;
  double y = 0.0;
};

struct ScanResult {
  std::vector<ScanPoint> points;
  LinearFit fit;
};

/// Per-sample trace variance against optical power (vacuum signal).
/// Linear: slope = shot noise per unit power, intercept = electronic.
ScanResult shot_noise_scan(const std::vector<double>& powers,
                           const TraceParams& base, int traces_per_power,
                           std::uint64_t seed);

/// Variance of the two-cell readout against atom number. The coupling
/// scales as kappa^2 proportional to the atom number, so the measured
/// variance is 1/2 + kappa_ref^2 (n/n_ref) / 2; the fit against n/n_ref
/// recovers kappa_ref^2 as twice the slope.
ScanResult projection_noise_scan(const std::vector<double>& atom_numbers,
                                 double kappa_ref, double n_ref,
                                 int samples_per_point, std::uint64_t seed);

}  // namespace qtel
