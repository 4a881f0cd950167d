#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "fcs/franson.hpp"

namespace fcs {

enum class Arm { signal, idler };

struct DetectorParams {
  double arm_loss_dB = 22.0;    // full arm budget incl. coupling, demux, efficiency
  double dark_rate_hz = 0.0;
  double dead_time_us = 16.0;
  double jitter_sigma_ps = 0.0;
  Arm label = Arm::signal;
  double background_rate_hz = 0.0;  // flat (e.g. residual Raman) rate

  void validate() const;  // throws ConfigError naming the field
};

struct FilterStage {
  double center_THz = 0.0;
  double bandwidth_GHz = 0.0;
  double off_band_isolation_dB = 0.0;
};

struct FilterCascade {
  std::vector<FilterStage> stages;
};

/// Rate after a dB loss: rate * 10^(-loss/10).
double effective_rate_hz(double internal_rate_hz, double loss_dB);

/// Total isolation of the cascade at a frequency; a stage contributes 0 dB
/// inside its passband and its off-band isolation outside.
double cascade_isolation_dB(const FilterCascade& cascade, double freq_THz);

/// Monotonically non-decreasing timestamps on a 1 ps integer grid.
struct TimeTagStream {
  Arm label = Arm::signal;
  std::vector<std::int64_t> tags_ps;
  double duration_s = 0.0;
  std::uint64_t seed = 0;
};

/// Inputs for one Monte-Carlo acquisition. Detected pairs appear at
/// internal_pair_rate attenuated by both arm losses; each is assigned to a
/// histogram peak {-delta_T, 0, +delta_T} by the Franson weights (the
/// non-selected remainder produces no coincident tags). Per-arm singles are
/// completed up to internal_rate * arm transmission, dark and background
/// counts are merged in, per-detector Gaussian jitter is applied to pair
/// tags, and the dead-time filter runs last.
struct TagScenario {
  double internal_pair_rate_hz = 0.0;
  HistogramWeights weights;
  double delta_T_ps = 350.0;
  DetectorParams signal;
  DetectorParams idler;
  double duration_s = 1.0;
  std::uint64_t seed = 0;
};

std::pair<TimeTagStream, TimeTagStream> generate_timetags(const TagScenario& scenario);

/// Non-paralyzable (greedy) dead-time filter: a tag is kept iff it arrives
/// at least dead_time after the last kept tag. Input must be sorted.
std::vector<std::int64_t> apply_dead_time(std::span<const std::int64_t> tags_ps,
                                          double dead_time_us);

}  // namespace fcs
