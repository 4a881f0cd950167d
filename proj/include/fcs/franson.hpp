#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace fcs {

struct InterferometerParams {
  double delta_T_ps = 350.0;          // path travel-time difference
  double intrinsic_visibility = 0.99;
  double phase_setpoint_rad = 0.0;
  double residual_phase_rms_rad = 0.0;
  double loop_bandwidth_hz = 300.0;
};

struct TimingBudget {
  double photon_coherence_ps = 100.0;
  double delta_T_ps = 350.0;
  double pump_coherence_ns = 100.0;
};

enum class TimingFailure {
  none,
  photon_coherence_too_long,  // first-order interference risk
  pump_coherence_too_short,   // no coherent short-short/long-long superposition
};

struct TimingVerdict {
  bool valid = false;
  TimingFailure failure = TimingFailure::none;
  std::string message;
};

/// Energy-time analysis requires photon_coherence < delta_T < pump_coherence.
TimingVerdict validate_timing(const TimingBudget& budget);

/// Relative weights of the three coincidence peaks, as fractions of the
/// detected-pair rate. The four two-photon paths through the unbalanced
/// interferometer each carry amplitude 1/4 into the monitored ports;
/// short-long and long-short are time-distinguishable side peaks, while
/// short-short and long-long interfere in the central peak:
///   w_side = 1/16,  w_central = (1/8) (1 + V cos(phase)).
struct HistogramWeights {
  double w_minus = 0.0;
  double w_central = 0.0;
  double w_plus = 0.0;
  double total() const { return w_minus + w_central + w_plus; }
};

HistogramWeights histogram_weights(double phase_rad, double visibility);

/// Expected central-window counts a(1 + V cos(phase)) per phase.
std::vector<double> fringe_curve(std::span<const double> phases_rad,
                                 double visibility, double mean_central);

struct PhaseSeries {
  std::vector<double> samples_rad;
  double residual_rms_rad = 0.0;
};

/// Default drift for stabilization studies: the largest round rate whose
/// stationary residual stays under 2*pi/50 rad with margin at the default
/// sampling step (residual ~ drift / sqrt(4*pi*bandwidth)).
inline constexpr double kDefaultDriftRate_rad_per_sqrt_s = 6.2832;
inline constexpr double kDefaultLoopStep_s = 5e-5;

/// Random-walk phase drift (drift_rms_rate in rad/sqrt(s)) corrected by a
/// first-order proportional loop of the given bandwidth, sampled every
/// `step_s` for `duration_s`. The loop is discretized exactly, so the series
/// is stable for any step that satisfies the sampling precondition
/// step < 1/(2 * loop_bandwidth). Deterministic per seed.
PhaseSeries stabilized_phase_series(double drift_rms_rate, double loop_bandwidth_hz,
                                    double duration_s, double step_s,
                                    std::uint64_t seed, double setpoint_rad = 0.0);

/// First-order visibility penalty for a mean of `mu` pairs per coherence
/// window: V / (1 + 2 mu).
double multipair_visibility_penalty(double visibility, double mu);

}  // namespace fcs
