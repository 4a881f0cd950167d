#pragma once

#include <cstdint>
#include <vector>

#include "fcs/analysis.hpp"
#include "fcs/coincidence.hpp"
#include "fcs/detection.hpp"
#include "fcs/franson.hpp"
#include "fcs/pairgen.hpp"
#include "fcs/resonator.hpp"
#include "fcs/units.hpp"

namespace fcs {

struct ScanSettings {
  int phase_points = 22;              // includes both endpoints of the span
  double phase_span_rad = kTwoPi;
  double acquisition_s = 150.0;
  std::int64_t bin_width_ps = 25;
  std::int64_t hist_half_range_ps = 875;
  double window_halfwidth_ps = 162.5;  // widest bin coverage inside +-delta_T/2
};

/// Full experiment description consumed by the CLI and the pipeline runs.
struct Scenario {
  ResonatorParams resonator = ResonatorParams::paper_defaults();
  ItuGrid grid;
  PairSourceModel source = PairSourceModel::paper_defaults();
  InterferometerParams interferometer;
  double pump_coherence_ns = 100.0;
  DetectorParams det_signal;
  DetectorParams det_idler;
  double pump_power_uW = 500.0;
  double mu_pairs_per_window = 0.0;
  /// Intrinsic two-photon visibility per active pair, aligned with
  /// source.active_pairs.
  std::vector<double> intrinsic_visibility;
  ScanSettings scan;
  std::vector<double> rates_powers_uW;
  double rates_duration_s = 20.0;
  double histogram_duration_s = 300.0;
  bool dark_only_accidentals = false;
  int spectrum_mode_min = -9;
  int spectrum_mode_max = 9;
  std::uint64_t seed = 12345;

  std::vector<double> scan_phases() const;
  double photon_coherence_ps() const;  // from the pump-resonance linewidth
  TimingBudget timing_budget() const;

  /// Throws ConfigError for parameter violations and PhysicsError when the
  /// Franson timing condition fails.
  void validate() const;
};

struct FringePoint {
  double phase_rad = 0.0;
  std::int64_t window_counts = 0;
  double measured_singles_signal_hz = 0.0;
  double measured_singles_idler_hz = 0.0;
  std::int64_t coincidences_in_range = 0;
};

struct PairFringeOutcome {
  ChannelPair pair;
  FringeScan scan;
  std::vector<FringePoint> points;
  double accidental_rate_hz = 0.0;  // estimate used for the net fit
  VisibilityResult raw;
  VisibilityResult net;
  BellVerdict bell;
};

/// Simulates a full fringe scan for one active pair: per phase point a
/// seeded acquisition, histogram, and central-window count; then raw fit,
/// accidental estimate from the measured singles (or dark rates only), net
/// refit, and Bell verdict. Phase points run concurrently with per-task
/// seeds, so results do not depend on scheduling.
PairFringeOutcome run_pair_fringe(const Scenario& scenario, std::size_t pair_index);

struct PowerSweepRow {
  double power_uW = 0.0;
  double internal_rate_hz = 0.0;           // analytic k * P^2
  double singles_signal_hz = 0.0;          // measured, after dead time
  double singles_idler_hz = 0.0;
  double coincidence_rate_hz = 0.0;        // three-peak rate estimate
  double inferred_internal_rate_hz = 0.0;  // dead-time corrected, dark
                                           // subtracted, loss unfolded
};

struct PowerSweepResult {
  std::vector<PowerSweepRow> rows;
  double analytic_loglog_slope = 2.0;
  double mc_loglog_slope = 0.0;
};

/// Monte-Carlo power sweep reproducing the quadratic pair-rate law from
/// detected singles.
PowerSweepResult run_power_sweep(const Scenario& scenario);

/// One acquisition of the three-peak histogram at a fixed two-photon phase
/// for the first active pair (or `pair_index`).
CoincidenceHistogram run_histogram_scan(const Scenario& scenario, double phase_rad,
                                        std::size_t pair_index = 0);

/// Time-tag streams for one scan point; used by the tag-file export.
std::pair<TimeTagStream, TimeTagStream> run_tag_acquisition(
    const Scenario& scenario, double phase_rad, double duration_s,
    std::size_t pair_index, std::uint64_t seed);

/// Slope of a log10-log10 least-squares fit through (x, y) pairs.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace fcs
