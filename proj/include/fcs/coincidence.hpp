#pragma once

#include <cstdint>
#include <vector>

#include "fcs/detection.hpp"

namespace fcs {

/// Cross-correlation histogram of idler minus signal arrival times.
/// Bins are centered on integer multiples of bin_width (index K is the bin
/// at delay 0), so the covered range is (-T, T) with T = (K + 1/2) * width
/// and bin_width divides 2T exactly. Edge delays are assigned by rounding
/// half away from zero, which makes the histogram mirror-exact under a swap
/// of the stream roles.
struct CoincidenceHistogram {
  std::int64_t bin_width_ps = 0;
  int side_bins = 0;  // K
  std::vector<std::int64_t> bins;  // size 2K+1
  std::int64_t total_pairs_examined = 0;
  double acquisition_time_s = 0.0;

  std::int64_t bin_center_ps(std::size_t index) const {
    return (static_cast<std::int64_t>(index) - side_bins) * bin_width_ps;
  }
  double half_range_ps() const {
    return (side_bins + 0.5) * static_cast<double>(bin_width_ps);
  }
  std::int64_t total_counts() const;
};

/// Two-pointer sweep, linear in total tags plus matches: every (signal,
/// idler) pair with |idler - signal| inside the range increments one bin.
/// Throws std::invalid_argument for unsorted streams.
CoincidenceHistogram build_histogram(const TimeTagStream& signal,
                                     const TimeTagStream& idler,
                                     std::int64_t bin_width_ps,
                                     std::int64_t half_range_ps);

struct WindowCounts {
  double center_ps = 0.0;
  double width_ps = 0.0;
  std::int64_t counts = 0;
  double accidentals_estimate = 0.0;
  /// Width actually covered by the selected bins (bin count * bin width);
  /// use this for accidental-rate estimates.
  double effective_width_ps = 0.0;
};

/// Sums the bins whose centers lie within [center - width/2, center + width/2].
/// Throws std::domain_error if the window reaches outside the histogram range.
WindowCounts window_count(const CoincidenceHistogram& hist, double center_ps,
                          double width_ps);

/// Flat accidental-coincidence rate R_s * R_i * window.
double accidental_rate_hz(double rate_signal_hz, double rate_idler_hz,
                          double window_ps);

struct NetCounts {
  double counts = 0.0;
  double sigma = 0.0;  // sqrt(raw + accidentals)
};

/// Accidental-subtracted counts, floored at zero.
NetCounts net_counts(const WindowCounts& raw, double accidentals);

}  // namespace fcs
