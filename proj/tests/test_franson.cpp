#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "fcs/franson.hpp"
#include "fcs/units.hpp"

using namespace fcs;

TEST_CASE("timing conditions for the energy-time analysis") {
  CHECK(validate_timing({100.0, 350.0, 100.0}).valid);

  TimingVerdict first_order = validate_timing({400.0, 350.0, 100.0});
  CHECK(!first_order.valid);
  CHECK(first_order.failure == TimingFailure::photon_coherence_too_long);

  TimingVerdict no_pump = validate_timing({100.0, 350.0, 0.2});
  CHECK(!no_pump.valid);
  CHECK(no_pump.failure == TimingFailure::pump_coherence_too_short);

  CHECK_THROWS_AS(validate_timing({0.0, 350.0, 100.0}), std::invalid_argument);
}

TEST_CASE("three-peak weights") {
  HistogramWeights destructive = histogram_weights(kPi, 1.0);
  CHECK(destructive.w_minus == 0.0625);
  CHECK(destructive.w_plus == 0.0625);
  CHECK(destructive.w_central == doctest::Approx(0.0).epsilon(1e-15));

  HistogramWeights constructive = histogram_weights(0.0, 1.0);
  CHECK(constructive.w_central == 0.25);
  CHECK(constructive.w_minus == 0.0625);

  CHECK(histogram_weights(0.5 * kPi, 0.99).w_central ==
        doctest::Approx(0.125).epsilon(1e-12));

  CHECK_THROWS_AS(histogram_weights(0.0, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(histogram_weights(0.0, -0.1), std::invalid_argument);
}

TEST_CASE("central weight equals the coherent sum of the four path amplitudes") {
  // Oracle: amplitudes 1/4 for SS, SL, LS, LL into the monitored ports;
  // SL and LS are the side peaks, SS and LL interfere with phase phi.
  const std::complex<double> amp(0.25, 0.0);
  for (double phi = 0.0; phi < kTwoPi; phi += 0.1) {
    std::complex<double> central = amp + amp * std::polar(1.0, phi);
    HistogramWeights w = histogram_weights(phi, 1.0);
    CHECK(w.w_central == doctest::Approx(std::norm(central)).epsilon(1e-12));
    CHECK(w.w_minus == doctest::Approx(std::norm(amp)).epsilon(1e-12));
    CHECK(w.w_plus == w.w_minus);
  }
}

TEST_CASE("post-selected fraction is 1/8 (1 + V cos phi) + 1/8") {
  for (double v : {0.0, 0.5, 0.99, 1.0}) {
    double avg = 0.0;
    const int n = 256;
    for (int k = 0; k < n; ++k) {
      double phi = kTwoPi * k / n;
      HistogramWeights w = histogram_weights(phi, v);
      CHECK(w.total() ==
            doctest::Approx(0.125 * (1.0 + v * std::cos(phi)) + 0.125)
                .epsilon(1e-12));
      avg += w.total();
    }
    CHECK(avg / n == doctest::Approx(0.25).epsilon(1e-9));
  }
}

TEST_CASE("fringe curve") {
  std::vector<double> phases = {0.0, 0.5 * kPi, kPi};
  auto counts = fringe_curve(phases, 0.99, 1000.0);
  CHECK(counts[0] == doctest::Approx(1990.0).epsilon(1e-12));
  CHECK(counts[1] == doctest::Approx(1000.0).epsilon(1e-9));
  CHECK(counts[2] == doctest::Approx(10.0).epsilon(1e-9));

  // uniform full cycle averages back to the mean
  std::vector<double> cycle;
  const int n = 1024;
  for (int k = 0; k < n; ++k) cycle.push_back(kTwoPi * k / n);
  auto c = fringe_curve(cycle, 0.7, 500.0);
  double avg = 0.0;
  for (double x : c) avg += x;
  CHECK(avg / n == doctest::Approx(500.0).epsilon(1e-9));

  // fringe extremes give back V exactly
  double cmax = 500.0 * (1.0 + 0.7);
  double cmin = 500.0 * (1.0 - 0.7);
  CHECK((cmax - cmin) / (cmax + cmin) == doctest::Approx(0.7).epsilon(1e-12));

  CHECK_THROWS_AS(fringe_curve(phases, 0.5, 0.0), std::invalid_argument);
}

TEST_CASE("phase stabilization loop") {
  SUBCASE("no drift, no residual") {
    PhaseSeries s = stabilized_phase_series(0.0, 300.0, 1.0, 1e-4, 42);
    CHECK(s.residual_rms_rad == 0.0);
    for (double x : s.samples_rad) CHECK(x == 0.0);
  }

  SUBCASE("deterministic per seed") {
    PhaseSeries a = stabilized_phase_series(2.0, 300.0, 1.0, 1e-4, 7, 0.3);
    PhaseSeries b = stabilized_phase_series(2.0, 300.0, 1.0, 1e-4, 7, 0.3);
    CHECK(a.samples_rad == b.samples_rad);
    CHECK(a.residual_rms_rad == b.residual_rms_rad);
    PhaseSeries c = stabilized_phase_series(2.0, 300.0, 1.0, 1e-4, 8, 0.3);
    CHECK(a.samples_rad != c.samples_rad);
  }

  SUBCASE("open loop random walk spreads as drift * sqrt(duration)") {
    const double drift = 1.5, duration = 2.0, step = 1e-3;
    double sum_sq = 0.0;
    const int seeds = 300;
    for (int seed = 0; seed < seeds; ++seed) {
      PhaseSeries s = stabilized_phase_series(drift, 0.0, duration, step, seed);
      double endpoint = s.samples_rad.back();
      sum_sq += endpoint * endpoint;
    }
    double rms = std::sqrt(sum_sq / seeds);
    CHECK(rms == doctest::Approx(drift * std::sqrt(duration)).epsilon(0.15));
  }

  SUBCASE("paper defaults stay under 2 pi / 50") {
    for (int seed = 1; seed <= 3; ++seed) {
      PhaseSeries s = stabilized_phase_series(kDefaultDriftRate_rad_per_sqrt_s,
                                              300.0, 20.0, kDefaultLoopStep_s,
                                              seed);
      CHECK(s.residual_rms_rad < kTwoPi / 50.0);
    }
  }

  SUBCASE("residual shrinks with loop bandwidth") {
    double mean_low = 0.0, mean_mid = 0.0, mean_high = 0.0;
    const int seeds = 20;
    for (int seed = 0; seed < seeds; ++seed) {
      mean_low += stabilized_phase_series(3.0, 50.0, 5.0, 1e-4, seed).residual_rms_rad;
      mean_mid += stabilized_phase_series(3.0, 300.0, 5.0, 1e-4, seed).residual_rms_rad;
      mean_high += stabilized_phase_series(3.0, 1500.0, 5.0, 1e-4, seed).residual_rms_rad;
    }
    CHECK(mean_low > mean_mid);
    CHECK(mean_mid > mean_high);
  }

  SUBCASE("sampling preconditions") {
    CHECK_THROWS_AS(stabilized_phase_series(1.0, 300.0, 1.0, 2e-3, 1),
                    std::invalid_argument);  // step too coarse
    CHECK_THROWS_AS(stabilized_phase_series(1.0, 300.0, 1e-3, 1e-4, 1),
                    std::invalid_argument);  // fewer than 100 steps
  }
}

TEST_CASE("multi-pair visibility penalty") {
  CHECK(multipair_visibility_penalty(0.99, 0.0) == 0.99);
  CHECK(multipair_visibility_penalty(1.0, 0.005) ==
        doctest::Approx(0.990099).epsilon(1e-6));
  CHECK(multipair_visibility_penalty(0.5, 0.25) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK_THROWS_AS(multipair_visibility_penalty(0.9, -0.1), std::domain_error);
}
