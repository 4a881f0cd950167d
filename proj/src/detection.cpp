#include "fcs/detection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fcs/errors.hpp"
#include "fcs/rng.hpp"
#include "fcs/units.hpp"

namespace fcs {

void DetectorParams::validate() const {
  const char* arm = (label == Arm::signal) ? "detector.signal" : "detector.idler";
  if (!(arm_loss_dB >= 0.0))
    throw ConfigError(std::string(arm) + ".arm_loss must be >= 0 dB");
  if (!(dark_rate_hz >= 0.0))
    throw ConfigError(std::string(arm) + ".dark_rate must be >= 0");
  if (!(dead_time_us > 0.0))
    throw ConfigError(std::string(arm) + ".dead_time must be > 0");
  if (!(jitter_sigma_ps >= 0.0))
    throw ConfigError(std::string(arm) + ".jitter_sigma must be >= 0");
  if (!(background_rate_hz >= 0.0))
    throw ConfigError(std::string(arm) + ".background_rate must be >= 0");
}

double effective_rate_hz(double internal_rate_hz, double loss_dB) {
  if (!(internal_rate_hz >= 0.0))
    throw std::domain_error("rate must be >= 0");
  return internal_rate_hz * db_to_transmission(loss_dB);
}

double cascade_isolation_dB(const FilterCascade& cascade, double freq_THz) {
  if (cascade.stages.empty())
    throw std::invalid_argument("filter cascade must have at least one stage");
  double total = 0.0;
  for (const FilterStage& s : cascade.stages) {
    double half_bw_THz = 0.5 * s.bandwidth_GHz * 1e-3;
    if (std::abs(freq_THz - s.center_THz) > half_bw_THz)
      total += s.off_band_isolation_dB;
  }
  return total;
}

namespace {

/// Homogeneous Poisson arrival times on [0, duration), sorted, ps grid.
void poisson_times(Rng& rng, double rate_hz, std::int64_t duration_ps,
                   std::vector<std::int64_t>& out) {
  if (!(rate_hz > 0.0)) return;
  const double mean = rate_hz * static_cast<double>(duration_ps) * 1e-12;
  out.reserve(out.size() + static_cast<std::size_t>(mean + 6.0 * std::sqrt(mean) + 16.0));
  const double scale_ps = 1e12 / rate_hz;
  double t = 0.0;
  for (;;) {
    t += -std::log1p(-rng.uniform()) * scale_ps;
    if (t >= static_cast<double>(duration_ps)) break;
    out.push_back(static_cast<std::int64_t>(t));
  }
}

void merge_into(std::vector<std::int64_t>& dst, const std::vector<std::int64_t>& a,
                const std::vector<std::int64_t>& b) {
  dst.resize(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), dst.begin());
}

}  // namespace

std::pair<TimeTagStream, TimeTagStream> generate_timetags(const TagScenario& sc) {
  if (!(sc.duration_s > 0.0))
    throw std::invalid_argument("duration must be > 0");
  if (sc.weights.w_minus < 0.0 || sc.weights.w_central < 0.0 || sc.weights.w_plus < 0.0)
    throw std::invalid_argument("histogram weights must be >= 0");
  if (sc.weights.total() > 1.0 + 1e-12)
    throw std::invalid_argument("histogram weights must sum to <= 1");
  if (!(sc.internal_pair_rate_hz >= 0.0))
    throw std::domain_error("pair rate must be >= 0");
  sc.signal.validate();
  sc.idler.validate();

  const std::int64_t duration_ps = std::llround(sc.duration_s * 1e12);
  const double t_s = db_to_transmission(sc.signal.arm_loss_dB);
  const double t_i = db_to_transmission(sc.idler.arm_loss_dB);
  const double detected_pair_rate = sc.internal_pair_rate_hz * t_s * t_i;
  const double kept_pair_rate = detected_pair_rate * sc.weights.total();
  const std::int64_t offset_ps = std::llround(sc.delta_T_ps);

  // Coincident pairs, assigned to a peak by the Franson weights.
  std::vector<std::int64_t> pair_sig, pair_idl;
  if (kept_pair_rate > 0.0) {
    Rng rng(derive_seed(sc.seed, 0));
    const double total_w = sc.weights.total();
    const double p_minus = sc.weights.w_minus / total_w;
    const double p_central = sc.weights.w_central / total_w;
    const double scale_ps = 1e12 / kept_pair_rate;
    const double mean = kept_pair_rate * sc.duration_s;
    pair_sig.reserve(static_cast<std::size_t>(mean + 6.0 * std::sqrt(mean) + 16.0));
    pair_idl.reserve(pair_sig.capacity());
    double t = 0.0;
    for (;;) {
      t += -std::log1p(-rng.uniform()) * scale_ps;
      if (t >= static_cast<double>(duration_ps)) break;
      double u = rng.uniform();
      std::int64_t dt = (u < p_minus) ? -offset_ps
                        : (u < p_minus + p_central) ? 0
                                                    : offset_ps;
      std::int64_t ts = std::llround(t + rng.normal(sc.signal.jitter_sigma_ps));
      std::int64_t ti = std::llround(t + static_cast<double>(dt) +
                                     rng.normal(sc.idler.jitter_sigma_ps));
      if (ts >= 0 && ts <= duration_ps) pair_sig.push_back(ts);
      if (ti >= 0 && ti <= duration_ps) pair_idl.push_back(ti);
    }
    // Jitter can reorder tags of nearby pairs.
    std::sort(pair_sig.begin(), pair_sig.end());
    std::sort(pair_idl.begin(), pair_idl.end());
  }

  auto build_stream = [&](Arm arm, const DetectorParams& det,
                          std::vector<std::int64_t>& pair_tags,
                          double arm_transmission) {
    const int base = (arm == Arm::signal) ? 1 : 4;
    // Unpaired singles top the photon rate up to internal * transmission.
    const double unpaired_rate =
        std::max(0.0, sc.internal_pair_rate_hz * arm_transmission - kept_pair_rate);
    std::vector<std::int64_t> singles;
    {
      Rng rng(derive_seed(sc.seed, static_cast<std::uint64_t>(base)));
      poisson_times(rng, unpaired_rate, duration_ps, singles);
    }
    std::vector<std::int64_t> noise;
    {
      Rng rng(derive_seed(sc.seed, static_cast<std::uint64_t>(base + 1)));
      poisson_times(rng, det.dark_rate_hz, duration_ps, noise);
    }
    if (det.background_rate_hz > 0.0) {
      std::vector<std::int64_t> bg;
      Rng rng(derive_seed(sc.seed, static_cast<std::uint64_t>(base + 2)));
      poisson_times(rng, det.background_rate_hz, duration_ps, bg);
      std::vector<std::int64_t> merged;
      merge_into(merged, noise, bg);
      noise.swap(merged);
    }

    std::vector<std::int64_t> photons;
    merge_into(photons, pair_tags, singles);
    std::vector<std::int64_t> all;
    merge_into(all, photons, noise);

    TimeTagStream stream;
    stream.label = arm;
    stream.duration_s = sc.duration_s;
    stream.seed = sc.seed;
    stream.tags_ps = apply_dead_time(all, det.dead_time_us);
    return stream;
  };

  TimeTagStream sig = build_stream(Arm::signal, sc.signal, pair_sig, t_s);
  TimeTagStream idl = build_stream(Arm::idler, sc.idler, pair_idl, t_i);
  return {std::move(sig), std::move(idl)};
}

std::vector<std::int64_t> apply_dead_time(std::span<const std::int64_t> tags_ps,
                                          double dead_time_us) {
  if (!(dead_time_us >= 0.0))
    throw std::invalid_argument("dead time must be >= 0");
  if (!std::is_sorted(tags_ps.begin(), tags_ps.end()))
    throw std::invalid_argument("time tags must be sorted");

  const std::int64_t dead_ps = std::llround(dead_time_us * 1e6);
  std::vector<std::int64_t> kept;
  kept.reserve(tags_ps.size());
  std::int64_t last = std::numeric_limits<std::int64_t>::min() / 2;
  for (std::int64_t t : tags_ps) {
    if (t - last >= dead_ps) {
      kept.push_back(t);
      last = t;
    }
  }
  return kept;
}

}  // namespace fcs
