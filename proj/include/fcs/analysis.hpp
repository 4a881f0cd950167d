#pragma once

#include <string>
#include <vector>

#include "fcs/pairgen.hpp"

namespace fcs {

struct FringeScan {
  ChannelPair channel_pair;
  std::vector<double> phases_rad;
  std::vector<std::int64_t> counts;
  double acquisition_time_per_point_s = 1.0;
};

enum class FitKind { raw, net };

struct VisibilityResult {
  double visibility = 0.0;
  double sigma = 0.0;
  double amplitude = 0.0;  // a * V, in counts
  double offset = 0.0;     // a, in counts
  double phase0_rad = 0.0;
  FitKind kind = FitKind::raw;
  bool ok = false;
  std::string failure;
};

/// Poisson-weighted least-squares fit of counts = a (1 + V cos(phi + phi0)).
/// Weights are 1/N per point (1 for zero-count points). The model is linear
/// in (a, a V cos phi0, -a V sin phi0), so the fit is exact and sigma comes
/// from the covariance of the normal equations.
VisibilityResult fit_fringe(const FringeScan& scan);

/// (c_max - c_min) / (c_max + c_min). Throws std::domain_error if both zero.
double visibility_from_extremes(double c_max, double c_min);

/// Subtracts accidental_rate * acquisition time from every count (floored at
/// zero) and refits with the raw-count weights.
VisibilityResult net_visibility(const FringeScan& scan, double accidental_rate_hz);

struct BellVerdict {
  bool pass = false;
  double significance = 0.0;  // (V - threshold) / sigma
  double threshold = 0.0;     // 1/sqrt(2)
};

/// Strict comparison against the 1/sqrt(2) non-classicality threshold.
BellVerdict bell_verdict(const VisibilityResult& result);

/// Visibility loss caused by side-peak leakage into the central window when
/// the coincidence peaks (Gaussian, sigma = coincidence_sigma) overlap:
/// V_meas = V * G_c / (G_c + 2 G_s) with G_c the phase-averaged central-peak
/// mass in the window and G_s one side-peak mass in the window. Returns
/// V - V_meas; exactly 0 for coincidence_sigma = 0.
double crosstalk_degradation(double delta_T_ps, double coincidence_sigma_ps,
                             double window_ps, double visibility);

}  // namespace fcs
