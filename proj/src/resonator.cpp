#include "fcs/resonator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "fcs/errors.hpp"
#include "fcs/units.hpp"

namespace fcs {

double ResonatorParams::circumference_m() const {
  return kTwoPi * radius_um * 1e-6;
}

double ResonatorParams::fsr_GHz() const {
  return kSpeedOfLight_m_per_s / (group_index * circumference_m()) * 1e-9;
}

void ResonatorParams::validate() const {
  if (!(radius_um > 0.0))
    throw ConfigError("resonator.radius must be > 0");
  if (!(group_index > 1.0 && group_index <= 5.0))
    throw ConfigError("resonator.group_index must be in (1, 5]");
  if (!(q_factor > 0.0))
    throw ConfigError("resonator.q_factor must be > 0");
  if (!(extinction_dB >= 0.0))
    throw ConfigError("resonator.extinction must be >= 0 dB");
  if (!(pump_resonance_THz > 0.0))
    throw ConfigError("resonator.pump_resonance must be > 0");
  if (!(fsr_GHz() > 0.0))
    throw ConfigError("resonator free spectral range must be > 0");
}

ResonatorParams ResonatorParams::paper_defaults() {
  ResonatorParams p;
  p.radius_um = 60.0;
  p.group_index = group_index_for_fsr(kDefaultFsr_GHz, p.radius_um);
  p.q_factor = 40000.0;
  p.extinction_dB = 15.0;
  p.dispersion_d2_GHz = 0.0;
  p.pump_resonance_THz = itu_channel_center_THz(50);
  return p;
}

double group_index_for_fsr(double fsr_GHz, double radius_um) {
  return kSpeedOfLight_m_per_s / (fsr_GHz * 1e9 * kTwoPi * radius_um * 1e-6);
}

double itu_channel_center_THz(int channel) {
  if (channel < 0 || channel > 100)
    throw std::domain_error("ITU channel must be in [0, 100], got " +
                            std::to_string(channel));
  return 190.0 + 0.1 * channel;
}

double itu_channel_wavelength_nm(int channel) {
  return freq_THz_to_wavelength_nm(itu_channel_center_THz(channel));
}

namespace {

double line_center_THz(const ResonatorParams& p, int m) {
  double fsr_THz = p.fsr_GHz() * 1e-3;
  double shift_THz =
      thermal_shift_GHz(p.temperature_offset_K, p.thermal_coeff_GHz_per_K) * 1e-3;
  return p.pump_resonance_THz + m * fsr_THz +
         0.5 * p.dispersion_d2_GHz * 1e-3 * m * m + shift_THz;
}

}  // namespace

std::vector<CombLine> comb_spectrum(const ResonatorParams& params,
                                    int mode_min, int mode_max) {
  params.validate();
  if (mode_min > 0 || mode_max < 0 || mode_min > mode_max)
    throw std::invalid_argument("mode range must contain 0");

  std::vector<CombLine> comb;
  comb.reserve(static_cast<std::size_t>(mode_max - mode_min + 1));
  for (int m = mode_min; m <= mode_max; ++m) {
    CombLine line;
    line.mode_index = m;
    line.center_THz = line_center_THz(params, m);
    line.linewidth_GHz = line.center_THz * 1e3 / params.q_factor;
    line.extinction_dB = params.extinction_dB;
    comb.push_back(line);
  }
  return comb;
}

double transmission(const ResonatorParams& params, double freq_THz) {
  params.validate();
  double fsr_THz = params.fsr_GHz() * 1e-3;
  double shift_THz = thermal_shift_GHz(params.temperature_offset_K,
                                       params.thermal_coeff_GHz_per_K) * 1e-3;
  int m0 = static_cast<int>(
      std::lround((freq_THz - params.pump_resonance_THz - shift_THz) / fsr_THz));

  // Dispersion bends the comb, so check the neighbourhood of the estimate.
  double best_center = line_center_THz(params, m0);
  for (int m = m0 - 2; m <= m0 + 2; ++m) {
    double c = line_center_THz(params, m);
    if (std::abs(freq_THz - c) < std::abs(freq_THz - best_center))
      best_center = c;
  }

  double linewidth_THz = best_center / params.q_factor;
  double t_min = db_to_transmission(params.extinction_dB);
  double x = 2.0 * (freq_THz - best_center) / linewidth_THz;
  double t = 1.0 - (1.0 - t_min) / (1.0 + x * x);
  return std::clamp(t, 0.0, 1.0);
}

double thermal_shift_GHz(double delta_T_K, double coeff_GHz_per_K) {
  return -coeff_GHz_per_K * delta_T_K;
}

std::map<int, int> assign_channels(const std::vector<CombLine>& comb,
                                   const ItuGrid& grid) {
  if (!(grid.passband_halfwidth_GHz > 0.0 && grid.passband_halfwidth_GHz <= 50.0))
    throw std::invalid_argument("grid passband halfwidth must be in (0, 50] GHz");

  std::map<int, int> assigned;
  double spacing_THz = grid.spacing_GHz * 1e-3;
  for (const CombLine& line : comb) {
    int n = static_cast<int>(
        std::lround((line.center_THz - grid.base_THz) / spacing_THz));
    if (n < 0 || n > 100) continue;
    double center = grid.base_THz + n * spacing_THz;
    double miss_GHz = std::abs(line.center_THz - center) * 1e3;
    // Inclusive at the passband edge despite rounding of the grid centers.
    if (miss_GHz <= grid.passband_halfwidth_GHz + 1e-6)
      assigned[line.mode_index] = n;
  }
  return assigned;
}

double coherence_time_ps(double linewidth_GHz) {
  if (!(linewidth_GHz > 0.0))
    throw std::domain_error("linewidth must be > 0");
  return 1e3 / (kPi * linewidth_GHz);
}

}  // namespace fcs
