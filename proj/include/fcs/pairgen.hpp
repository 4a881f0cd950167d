#pragma once

#include <vector>

namespace fcs {

/// Signal/idler ITU channels placed symmetrically about the pump channel so
/// that signal + idler = 2 * pump (energy conservation on the grid).
struct ChannelPair {
  int signal_channel = 0;
  int idler_channel = 0;
  int pump_channel = 0;

  bool operator==(const ChannelPair&) const = default;
};

/// Builds the pair pump +- offset. Throws std::invalid_argument for the
/// degenerate offset 0.
ChannelPair make_channel_pair(int pump_channel, int offset);

/// Phenomenological SFWM source: rate = k * power^2 with k fixed by a single
/// calibration point, split over the active channel pairs by weight.
struct PairSourceModel {
  double calib_power_uW = 500.0;
  double calib_rate_hz = 2e6;
  int pump_channel = 50;
  std::vector<ChannelPair> active_pairs;
  std::vector<double> per_pair_weights;

  double rate_coefficient() const;  // pairs/s per uW^2

  /// Throws ConfigError if weights are inconsistent with active_pairs.
  void validate() const;

  /// Calibration 2e6 pairs/s at 500 uW, pump on channel 50, four active
  /// pairs at offsets 2, 5, 7, 9 with flat weights.
  static PairSourceModel paper_defaults();
};

/// Total internal pair rate at the given coupled pump power.
double pair_rate_hz(const PairSourceModel& model, double power_uW);

/// Pairs/s/MHz for a rate confined to one resonance linewidth.
double spectral_brightness_per_MHz(double rate_hz, double linewidth_GHz);

/// Share of the total rate generated into one active pair. Throws
/// std::out_of_range if the pair is not active.
double per_pair_rate_hz(const PairSourceModel& model, const ChannelPair& pair,
                        double power_uW);

}  // namespace fcs
