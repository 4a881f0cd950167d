#include "fcs/scenario.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>

#include "fcs/errors.hpp"
#include "fcs/rng.hpp"
#include "fcs/units.hpp"

namespace fcs {

namespace {

/// Runs tasks [0, n) on the available cores; each task owns its slot of the
/// output, so completion order is irrelevant.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  unsigned hw = std::thread::hardware_concurrency();
  if (const char* env = std::getenv("FCS_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) hw = static_cast<unsigned>(v);
  }
  const unsigned workers = std::min<unsigned>(hw > 0 ? hw : 1, n > 0 ? n : 1);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned t = 0; t < workers; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        fn(i);
      }
    });
  }
  for (auto& th : pool) th.join();
}

std::uint64_t task_seed(std::uint64_t master, std::size_t pair_index,
                        std::size_t point_index) {
  return derive_seed(master, 1000 + pair_index * 256 + point_index);
}

}  // namespace

std::vector<double> Scenario::scan_phases() const {
  std::vector<double> phases;
  phases.reserve(static_cast<std::size_t>(scan.phase_points));
  for (int k = 0; k < scan.phase_points; ++k)
    phases.push_back(interferometer.phase_setpoint_rad +
                     scan.phase_span_rad * k / (scan.phase_points - 1));
  return phases;
}

double Scenario::photon_coherence_ps() const {
  double linewidth_GHz = resonator.pump_resonance_THz * 1e3 / resonator.q_factor;
  return coherence_time_ps(linewidth_GHz);
}

TimingBudget Scenario::timing_budget() const {
  TimingBudget budget;
  budget.photon_coherence_ps = photon_coherence_ps();
  budget.delta_T_ps = interferometer.delta_T_ps;
  budget.pump_coherence_ns = pump_coherence_ns;
  return budget;
}

void Scenario::validate() const {
  resonator.validate();
  source.validate();
  det_signal.validate();
  det_idler.validate();
  if (!(pump_power_uW >= 0.0))
    throw ConfigError("source.pump_power must be >= 0");
  if (!(pump_coherence_ns > 0.0))
    throw ConfigError("source.pump_coherence must be > 0");
  if (!(mu_pairs_per_window >= 0.0))
    throw ConfigError("source.mu must be >= 0");
  if (!(interferometer.delta_T_ps > 0.0))
    throw ConfigError("interferometer.delta_T must be > 0");
  if (!(interferometer.residual_phase_rms_rad >= 0.0))
    throw ConfigError("interferometer.residual_phase_rms must be >= 0");
  if (intrinsic_visibility.size() != source.active_pairs.size())
    throw ConfigError("interferometer.visibility needs one value per active pair");
  for (double v : intrinsic_visibility)
    if (!(v >= 0.0 && v <= 1.0))
      throw ConfigError("interferometer.visibility values must be in [0, 1]");
  if (scan.phase_points < 5)
    throw ConfigError("scan.phase_points must be >= 5");
  if (!(scan.phase_span_rad >= kTwoPi - 1e-9))
    throw ConfigError("scan.phase_span must cover at least one period");
  if (!(scan.acquisition_s > 0.0))
    throw ConfigError("scan.acquisition must be > 0");
  if (scan.bin_width_ps <= 0)
    throw ConfigError("scan.bin_width must be > 0");
  if (scan.hist_half_range_ps < scan.bin_width_ps)
    throw ConfigError("scan.hist_half_range must cover at least one bin");
  if (!(scan.window_halfwidth_ps > 0.0) ||
      scan.window_halfwidth_ps > static_cast<double>(scan.hist_half_range_ps))
    throw ConfigError("scan.window_halfwidth must be in (0, hist_half_range]");
  if (!(rates_duration_s > 0.0))
    throw ConfigError("rates.duration must be > 0");
  if (!(histogram_duration_s > 0.0))
    throw ConfigError("histogram.duration must be > 0");

  TimingVerdict verdict = validate_timing(timing_budget());
  if (!verdict.valid)
    throw PhysicsError("Franson timing condition failed: " + verdict.message);
}

namespace {

TagScenario make_tag_scenario(const Scenario& sc, std::size_t pair_index,
                              double phase_rad, double duration_s,
                              std::uint64_t seed) {
  const ChannelPair& pair = sc.source.active_pairs.at(pair_index);
  double v0 = sc.intrinsic_visibility.at(pair_index);
  double v_eff = multipair_visibility_penalty(v0, sc.mu_pairs_per_window);

  double phase = phase_rad;
  if (sc.interferometer.residual_phase_rms_rad > 0.0) {
    Rng rng(derive_seed(seed, 7));
    phase += rng.normal(sc.interferometer.residual_phase_rms_rad);
  }

  TagScenario tag;
  tag.internal_pair_rate_hz = per_pair_rate_hz(sc.source, pair, sc.pump_power_uW);
  tag.weights = histogram_weights(phase, v_eff);
  tag.delta_T_ps = sc.interferometer.delta_T_ps;
  tag.signal = sc.det_signal;
  tag.signal.label = Arm::signal;
  tag.idler = sc.det_idler;
  tag.idler.label = Arm::idler;
  tag.duration_s = duration_s;
  tag.seed = seed;
  return tag;
}

}  // namespace

std::pair<TimeTagStream, TimeTagStream> run_tag_acquisition(
    const Scenario& scenario, double phase_rad, double duration_s,
    std::size_t pair_index, std::uint64_t seed) {
  return generate_timetags(
      make_tag_scenario(scenario, pair_index, phase_rad, duration_s, seed));
}

PairFringeOutcome run_pair_fringe(const Scenario& sc, std::size_t pair_index) {
  if (pair_index >= sc.source.active_pairs.size())
    throw std::out_of_range("pair index outside the active pairs");

  const std::vector<double> phases = sc.scan_phases();
  PairFringeOutcome outcome;
  outcome.pair = sc.source.active_pairs[pair_index];
  outcome.points.resize(phases.size());

  parallel_for(phases.size(), [&](std::size_t k) {
    const std::uint64_t seed = task_seed(sc.seed, pair_index, k);
    auto [sig, idl] = run_tag_acquisition(sc, phases[k], sc.scan.acquisition_s,
                                          pair_index, seed);
    CoincidenceHistogram hist = build_histogram(sig, idl, sc.scan.bin_width_ps,
                                                sc.scan.hist_half_range_ps);
    WindowCounts wc = window_count(hist, 0.0, 2.0 * sc.scan.window_halfwidth_ps);

    FringePoint& pt = outcome.points[k];
    pt.phase_rad = phases[k];
    pt.window_counts = wc.counts;
    pt.measured_singles_signal_hz =
        static_cast<double>(sig.tags_ps.size()) / sc.scan.acquisition_s;
    pt.measured_singles_idler_hz =
        static_cast<double>(idl.tags_ps.size()) / sc.scan.acquisition_s;
    pt.coincidences_in_range = hist.total_counts();
  });

  outcome.scan.channel_pair = outcome.pair;
  outcome.scan.phases_rad = phases;
  outcome.scan.acquisition_time_per_point_s = sc.scan.acquisition_s;
  double mean_s = 0.0, mean_i = 0.0;
  for (const FringePoint& pt : outcome.points) {
    outcome.scan.counts.push_back(pt.window_counts);
    mean_s += pt.measured_singles_signal_hz;
    mean_i += pt.measured_singles_idler_hz;
  }
  mean_s /= static_cast<double>(outcome.points.size());
  mean_i /= static_cast<double>(outcome.points.size());

  // The analysis window is the bin coverage of the selected window.
  const double n_bins =
      2.0 * std::floor(sc.scan.window_halfwidth_ps / sc.scan.bin_width_ps) + 1.0;
  const double window_width_ps = n_bins * static_cast<double>(sc.scan.bin_width_ps);
  if (sc.dark_only_accidentals)
    outcome.accidental_rate_hz = accidental_rate_hz(
        sc.det_signal.dark_rate_hz, sc.det_idler.dark_rate_hz, window_width_ps);
  else
    outcome.accidental_rate_hz = accidental_rate_hz(mean_s, mean_i, window_width_ps);

  outcome.raw = fit_fringe(outcome.scan);
  outcome.net = net_visibility(outcome.scan, outcome.accidental_rate_hz);
  outcome.bell = bell_verdict(outcome.raw);
  return outcome;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("slope fit needs >= 2 points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0 && y[i] > 0.0))
      throw std::domain_error("log-log slope needs positive data");
    double lx = std::log10(x[i]);
    double ly = std::log10(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  double n = static_cast<double>(x.size());
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

PowerSweepResult run_power_sweep(const Scenario& sc) {
  if (sc.rates_powers_uW.empty())
    throw ConfigError("rates.powers must list at least one pump power");

  PowerSweepResult result;
  result.rows.resize(sc.rates_powers_uW.size());

  // Singles are measured halfway up the fringe so the sweep does not depend
  // on the phase setpoint.
  const double phase = 0.5 * kPi;

  parallel_for(sc.rates_powers_uW.size(), [&](std::size_t i) {
    Scenario point = sc;
    point.pump_power_uW = sc.rates_powers_uW[i];
    const std::uint64_t seed = derive_seed(sc.seed, 500 + i);
    auto [sig, idl] =
        run_tag_acquisition(point, phase, sc.rates_duration_s, 0, seed);
    CoincidenceHistogram hist = build_histogram(sig, idl, sc.scan.bin_width_ps,
                                                sc.scan.hist_half_range_ps);

    PowerSweepRow& row = result.rows[i];
    row.power_uW = point.pump_power_uW;
    row.internal_rate_hz = pair_rate_hz(sc.source, point.pump_power_uW);
    row.singles_signal_hz =
        static_cast<double>(sig.tags_ps.size()) / sc.rates_duration_s;
    row.singles_idler_hz =
        static_cast<double>(idl.tags_ps.size()) / sc.rates_duration_s;
    row.coincidence_rate_hz =
        static_cast<double>(hist.total_counts()) / sc.rates_duration_s;

    // Invert the non-paralyzable dead time, subtract darks and background,
    // and unfold the arm loss and pair-weight share to estimate the internal
    // rate the singles imply.
    const double tau_s = sc.det_signal.dead_time_us * 1e-6;
    const double corrected =
        row.singles_signal_hz / (1.0 - row.singles_signal_hz * tau_s);
    const double photon_rate = std::max(
        0.0, corrected - sc.det_signal.dark_rate_hz - sc.det_signal.background_rate_hz);
    const double share = sc.source.per_pair_weights.empty()
                             ? 1.0
                             : sc.source.per_pair_weights[0];
    row.inferred_internal_rate_hz =
        photon_rate / db_to_transmission(sc.det_signal.arm_loss_dB) / share;
  });

  std::vector<double> powers, inferred;
  for (const PowerSweepRow& row : result.rows) {
    powers.push_back(row.power_uW);
    inferred.push_back(row.inferred_internal_rate_hz);
  }
  result.analytic_loglog_slope = 2.0;
  result.mc_loglog_slope =
      (powers.size() >= 2) ? loglog_slope(powers, inferred) : 0.0;
  return result;
}

CoincidenceHistogram run_histogram_scan(const Scenario& sc, double phase_rad,
                                        std::size_t pair_index) {
  const std::uint64_t seed = derive_seed(sc.seed, 900 + pair_index);
  auto [sig, idl] = run_tag_acquisition(sc, phase_rad, sc.histogram_duration_s,
                                        pair_index, seed);
  return build_histogram(sig, idl, sc.scan.bin_width_ps, sc.scan.hist_half_range_ps);
}

}  // namespace fcs
