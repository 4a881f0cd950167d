#include "fcs/pairgen.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "fcs/errors.hpp"

namespace fcs {

ChannelPair make_channel_pair(int pump_channel, int offset) {
  if (offset == 0)
    throw std::invalid_argument("degenerate channel pair: offset must be nonzero");
  ChannelPair pair;
  pair.pump_channel = pump_channel;
  pair.signal_channel = pump_channel + offset;
  pair.idler_channel = pump_channel - offset;
  return pair;
}

double PairSourceModel::rate_coefficient() const {
  return calib_rate_hz / (calib_power_uW * calib_power_uW);
}

void PairSourceModel::validate() const {
  if (!(calib_power_uW > 0.0))
    throw ConfigError("source.calib_power must be > 0");
  if (!(calib_rate_hz > 0.0))
    throw ConfigError("source.calib_rate must be > 0");
  if (active_pairs.size() != per_pair_weights.size())
    throw ConfigError("source.pair_weights must match the number of active pairs");
  double sum = 0.0;
  for (double w : per_pair_weights) {
    if (!(w >= 0.0)) throw ConfigError("source.pair_weights must be >= 0");
    sum += w;
  }
  if (!active_pairs.empty() && std::abs(sum - 1.0) > 1e-9)
    throw ConfigError("source.pair_weights must sum to 1");
  for (const ChannelPair& p : active_pairs) {
    if (p.signal_channel + p.idler_channel != 2 * p.pump_channel)
      throw ConfigError("active pair violates signal + idler = 2 * pump");
    if (p.signal_channel == p.idler_channel)
      throw ConfigError("active pair is degenerate");
  }
}

PairSourceModel PairSourceModel::paper_defaults() {
  PairSourceModel m;
  m.calib_power_uW = 500.0;
  m.calib_rate_hz = 2e6;
  m.pump_channel = 50;
  for (int offset : {2, 5, 7, 9})
    m.active_pairs.push_back(make_channel_pair(m.pump_channel, offset));
  m.per_pair_weights.assign(m.active_pairs.size(),
                            1.0 / static_cast<double>(m.active_pairs.size()));
  return m;
}

double pair_rate_hz(const PairSourceModel& model, double power_uW) {
  if (!(power_uW >= 0.0))
    throw std::domain_error("pump power must be >= 0");
  return model.rate_coefficient() * power_uW * power_uW;
}

double spectral_brightness_per_MHz(double rate_hz, double linewidth_GHz) {
  if (!(linewidth_GHz > 0.0))
    throw std::domain_error("linewidth must be > 0");
  return rate_hz / (linewidth_GHz * 1e3);
}

double per_pair_rate_hz(const PairSourceModel& model, const ChannelPair& pair,
                        double power_uW) {
  for (std::size_t i = 0; i < model.active_pairs.size(); ++i) {
    if (model.active_pairs[i] == pair)
      return pair_rate_hz(model, power_uW) * model.per_pair_weights[i];
  }
  throw std::out_of_range("channel pair is not active in this source model");
}

}  // namespace fcs
