#include <stdexcept>

#include "doctest.h"
#include "fcs/pairgen.hpp"
#include "fcs/resonator.hpp"
#include "fcs/rng.hpp"

using namespace fcs;

TEST_CASE("pair rate follows the calibrated quadratic law") {
  PairSourceModel model = PairSourceModel::paper_defaults();
  CHECK(model.rate_coefficient() == 8.0);  // pairs/s per uW^2
  CHECK(pair_rate_hz(model, 500.0) == 2e6);
  CHECK(pair_rate_hz(model, 0.0) == 0.0);
  CHECK(pair_rate_hz(model, 250.0) == 5e5);
  CHECK_THROWS_AS(pair_rate_hz(model, -1.0), std::domain_error);
}

TEST_CASE("doubling the power quadruples the rate") {
  PairSourceModel model = PairSourceModel::paper_defaults();
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    double p = rng.uniform() * 1000.0 + 1e-3;
    CHECK(pair_rate_hz(model, 2.0 * p) ==
          doctest::Approx(4.0 * pair_rate_hz(model, p)).epsilon(1e-9));
  }
}

TEST_CASE("spectral brightness") {
  CHECK(spectral_brightness_per_MHz(2e6, 5.0) == 400.0);
  CHECK(spectral_brightness_per_MHz(0.0, 3.0) == 0.0);
  CHECK(spectral_brightness_per_MHz(1e6, 5.0) == 200.0);
  CHECK_THROWS_AS(spectral_brightness_per_MHz(1e6, 0.0), std::domain_error);
}

TEST_CASE("channel pairs sit symmetrically about the pump") {
  ChannelPair p = make_channel_pair(50, 5);
  CHECK(p.signal_channel == 55);
  CHECK(p.idler_channel == 45);

  ChannelPair q = make_channel_pair(50, 2);
  CHECK(q.signal_channel == 52);
  CHECK(q.idler_channel == 48);
  CHECK(itu_channel_center_THz(q.signal_channel) +
            itu_channel_center_THz(q.idler_channel) ==
        doctest::Approx(2.0 * itu_channel_center_THz(50)).epsilon(1e-12));

  CHECK_THROWS_AS(make_channel_pair(50, 0), std::invalid_argument);
}

TEST_CASE("energy conservation for every offset in [-9, 9] \\ {0}") {
  for (int offset = -9; offset <= 9; ++offset) {
    if (offset == 0) continue;
    ChannelPair p = make_channel_pair(50, offset);
    CHECK(p.signal_channel + p.idler_channel == 2 * p.pump_channel);
    CHECK(p.signal_channel != p.idler_channel);
  }
}

TEST_CASE("per-pair allocation") {
  PairSourceModel model = PairSourceModel::paper_defaults();

  SUBCASE("flat weights split 2e6 over four pairs") {
    for (const ChannelPair& pair : model.active_pairs)
      CHECK(per_pair_rate_hz(model, pair, 500.0) == doctest::Approx(5e5));
  }

  SUBCASE("weights scale the shares") {
    model.per_pair_weights = {0.4, 0.3, 0.2, 0.1};
    CHECK(per_pair_rate_hz(model, model.active_pairs[0], 500.0) ==
          doctest::Approx(8e5));
    model.per_pair_weights = {0.0, 0.5, 0.3, 0.2};
    CHECK(per_pair_rate_hz(model, model.active_pairs[0], 500.0) == 0.0);
  }

  SUBCASE("shares sum to the total rate") {
    model.per_pair_weights = {0.4, 0.3, 0.2, 0.1};
    double sum = 0.0;
    for (const ChannelPair& pair : model.active_pairs)
      sum += per_pair_rate_hz(model, pair, 321.0);
    CHECK(sum == doctest::Approx(pair_rate_hz(model, 321.0)).epsilon(1e-12));
  }

  SUBCASE("inactive pair is a lookup error") {
    CHECK_THROWS_AS(per_pair_rate_hz(model, make_channel_pair(50, 3), 500.0),
                    std::out_of_range);
  }
}
