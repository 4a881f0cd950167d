#include "fcs/coincidence.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace fcs {

std::int64_t CoincidenceHistogram::total_counts() const {
  return std::accumulate(bins.begin(), bins.end(), std::int64_t{0});
}

CoincidenceHistogram build_histogram(const TimeTagStream& signal,
                                     const TimeTagStream& idler,
                                     std::int64_t bin_width_ps,
                                     std::int64_t half_range_ps) {
  if (bin_width_ps <= 0)
    throw std::invalid_argument("bin width must be > 0");
  if (half_range_ps < bin_width_ps)
    throw std::invalid_argument("histogram range must cover at least one bin");
  if (!std::is_sorted(signal.tags_ps.begin(), signal.tags_ps.end()) ||
      !std::is_sorted(idler.tags_ps.begin(), idler.tags_ps.end()))
    throw std::invalid_argument("time-tag streams must be sorted");

  CoincidenceHistogram hist;
  hist.bin_width_ps = bin_width_ps;
  hist.side_bins = static_cast<int>(
      std::llround(static_cast<double>(half_range_ps) / bin_width_ps));
  hist.acquisition_time_s = signal.duration_s;
  hist.bins.assign(static_cast<std::size_t>(2 * hist.side_bins + 1), 0);

  const std::int64_t K = hist.side_bins;
  const std::int64_t w = bin_width_ps;
  // Accept |dt| < (K + 1/2) * w, kept in integer arithmetic.
  const std::int64_t two_dt_limit = (2 * K + 1) * w;

  const auto& sig = signal.tags_ps;
  const auto& idl = idler.tags_ps;
  std::size_t lo = 0;
  for (std::int64_t ti : idl) {
    while (lo < sig.size() && 2 * (ti - sig[lo]) >= two_dt_limit) ++lo;
    for (std::size_t j = lo; j < sig.size(); ++j) {
      std::int64_t dt = ti - sig[j];
      if (2 * (sig[j] - ti) >= two_dt_limit) break;
      std::int64_t mag = std::llabs(dt);
      std::int64_t k = (2 * mag + w) / (2 * w);  // round half away from zero
      if (k > K) continue;
      std::size_t idx = static_cast<std::size_t>(dt >= 0 ? K + k : K - k);
      ++hist.bins[idx];
      ++hist.total_pairs_examined;
    }
  }
  return hist;
}

WindowCounts window_count(const CoincidenceHistogram& hist, double center_ps,
                          double width_ps) {
  if (!(width_ps > 0.0))
    throw std::domain_error("window width must be > 0");
  const double half = 0.5 * width_ps;
  const double range = hist.half_range_ps();
  if (center_ps - half < -range - 1e-9 || center_ps + half > range + 1e-9)
    throw std::domain_error("window reaches outside the histogram range");

  WindowCounts wc;
  wc.center_ps = center_ps;
  wc.width_ps = width_ps;
  int selected = 0;
  for (std::size_t i = 0; i < hist.bins.size(); ++i) {
    double c = static_cast<double>(hist.bin_center_ps(i));
    if (std::abs(c - center_ps) <= half + 1e-9) {
      wc.counts += hist.bins[i];
      ++selected;
    }
  }
  wc.effective_width_ps = selected * static_cast<double>(hist.bin_width_ps);
  return wc;
}

double accidental_rate_hz(double rate_signal_hz, double rate_idler_hz,
                          double window_ps) {
  if (!(rate_signal_hz >= 0.0 && rate_idler_hz >= 0.0 && window_ps >= 0.0))
    throw std::domain_error("accidental rate inputs must be >= 0");
  return rate_signal_hz * rate_idler_hz * window_ps * 1e-12;
}

NetCounts net_counts(const WindowCounts& raw, double accidentals) {
  if (!(accidentals >= 0.0))
    throw std::domain_error("accidentals must be >= 0");
  NetCounts net;
  net.counts = std::max(0.0, static_cast<double>(raw.counts) - accidentals);
  net.sigma = std::sqrt(static_cast<double>(raw.counts) + accidentals);
  return net;
}

}  // namespace fcs
