#include "fcs/franson.hpp"

#include <cmath>
#include <stdexcept>

#include "fcs/rng.hpp"
#include "fcs/units.hpp"

namespace fcs {

TimingVerdict validate_timing(const TimingBudget& budget) {
  if (!(budget.photon_coherence_ps > 0.0 && budget.delta_T_ps > 0.0 &&
        budget.pump_coherence_ns > 0.0))
    throw std::invalid_argument("timing budget durations must be > 0");

  TimingVerdict v;
  if (!(budget.photon_coherence_ps < budget.delta_T_ps)) {
    v.valid = false;
    v.failure = TimingFailure::photon_coherence_too_long;
    v.message = "delta_T must exceed the single-photon coherence time "
                "(first-order interference risk)";
    return v;
  }
  if (!(budget.delta_T_ps < budget.pump_coherence_ns * 1e3)) {
    v.valid = false;
    v.failure = TimingFailure::pump_coherence_too_short;
    v.message = "delta_T must stay below the pump coherence time "
                "(no short-short/long-long superposition)";
    return v;
  }
  v.valid = true;
  v.message = "ok";
  return v;
}

HistogramWeights histogram_weights(double phase_rad, double visibility) {
  if (!(visibility >= 0.0 && visibility <= 1.0))
    throw std::invalid_argument("visibility must be in [0, 1]");
  HistogramWeights w;
  w.w_minus = 1.0 / 16.0;
  w.w_plus = 1.0 / 16.0;
  w.w_central = 0.125 * (1.0 + visibility * std::cos(phase_rad));
  return w;
}

std::vector<double> fringe_curve(std::span<const double> phases_rad,
                                 double visibility, double mean_central) {
  if (!(mean_central > 0.0))
    throw std::invalid_argument("mean_central must be > 0");
  std::vector<double> counts;
  counts.reserve(phases_rad.size());
  for (double phi : phases_rad)
    counts.push_back(mean_central * (1.0 + visibility * std::cos(phi)));
  return counts;
}

PhaseSeries stabilized_phase_series(double drift_rms_rate, double loop_bandwidth_hz,
                                    double duration_s, double step_s,
                                    std::uint64_t seed, double setpoint_rad) {
  if (!(drift_rms_rate >= 0.0))
    throw std::invalid_argument("drift_rms_rate must be >= 0");
  if (!(loop_bandwidth_hz >= 0.0))
    throw std::invalid_argument("loop_bandwidth must be >= 0");
  if (!(step_s > 0.0))
    throw std::invalid_argument("step must be > 0");
  if (loop_bandwidth_hz > 0.0 && !(step_s < 1.0 / (2.0 * loop_bandwidth_hz)))
    throw std::invalid_argument("step too coarse for the loop bandwidth");
  if (duration_s < 100.0 * step_s)
    throw std::invalid_argument("duration must cover at least 100 steps");

  const std::size_t n_steps = static_cast<std::size_t>(duration_s / step_s);
  const double decay = std::exp(-kTwoPi * loop_bandwidth_hz * step_s);
  const double sigma_step = drift_rms_rate * std::sqrt(step_s);

  Rng rng(seed);
  PhaseSeries series;
  series.samples_rad.reserve(n_steps + 1);
  double dev = 0.0;  // deviation from setpoint
  series.samples_rad.push_back(setpoint_rad);
  double sum_sq = 0.0;
  for (std::size_t i = 0; i < n_steps; ++i) {
    dev = dev * decay + rng.normal(sigma_step);
    series.samples_rad.push_back(setpoint_rad + dev);
    sum_sq += dev * dev;
  }
  series.residual_rms_rad = std::sqrt(sum_sq / static_cast<double>(n_steps));
  return series;
}

double multipair_visibility_penalty(double visibility, double mu) {
  if (!(mu >= 0.0))
    throw std::domain_error("mean pair number must be >= 0");
  return visibility / (1.0 + 2.0 * mu);
}

}  // namespace fcs
