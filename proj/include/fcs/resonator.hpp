#pragma once

#include <map>
#include <vector>

namespace fcs {

/// Default free spectral range shipped with the model. 233 GHz lies inside
/// the interval of FSR values for which the comb lines fall into the ITU
/// channel pairs 48/52, 45/55, 43/57 and 41/59 with the default +-40 GHz
/// demux passband (see tests for the grid-search that pins this interval).
inline constexpr double kDefaultFsr_GHz = 233.0;

struct ResonatorParams {
  double radius_um = 60.0;
  double group_index = 3.4;
  double q_factor = 40000.0;
  double extinction_dB = 15.0;         // dip depth; not stated by most specs, configurable
  double dispersion_d2_GHz = 0.0;      // quadratic mode-spacing term, GHz per mode-index^2
  double pump_resonance_THz = 195.0;   // ITU channel 50
  double temperature_offset_K = 0.0;
  double thermal_coeff_GHz_per_K = 10.0;

  double circumference_m() const;
  double fsr_GHz() const;

  /// Throws ConfigError naming the offending field.
  void validate() const;

  /// 60 um ring tuned so the FSR is exactly kDefaultFsr_GHz, Q = 40000,
  /// pump resonance on ITU channel 50.
  static ResonatorParams paper_defaults();
};

/// Group index that yields a given FSR for a given ring radius.
double group_index_for_fsr(double fsr_GHz, double radius_um);

struct CombLine {
  int mode_index = 0;           // 0 = pump resonance
  double center_THz = 0.0;
  double linewidth_GHz = 0.0;   // center_freq / Q
  double extinction_dB = 0.0;
};

struct ItuGrid {
  double base_THz = 190.0;      // channel 0
  double spacing_GHz = 100.0;
  double passband_halfwidth_GHz = 40.0;
};

/// Center frequency of ITU channel n (n in [0, 100]); channel n sits at
/// base + n * 100 GHz. Throws std::domain_error outside the range.
double itu_channel_center_THz(int channel);

/// Vacuum wavelength of an ITU channel center.
double itu_channel_wavelength_nm(int channel);

/// Comb lines for mode indices [mode_min, mode_max] (must contain 0):
/// nu_m = nu_pump + m*FSR + (d2/2)*m^2, all shifted by the thermo-optic
/// offset, linewidth = nu_m / Q.
std::vector<CombLine> comb_spectrum(const ResonatorParams& params,
                                    int mode_min, int mode_max);

/// Lorentzian transmission dip of the nearest comb line, clamped to [0, 1].
double transmission(const ResonatorParams& params, double freq_THz);

/// Thermo-optic resonance shift: heating red-shifts (negative) because
/// silicon's thermo-optic coefficient is positive.
double thermal_shift_GHz(double delta_T_K, double coeff_GHz_per_K);

/// Map comb lines onto ITU channels: a line claims channel n iff its center
/// is within the passband halfwidth of the channel center. Returns
/// mode_index -> channel for assigned lines only.
std::map<int, int> assign_channels(const std::vector<CombLine>& comb,
                                   const ItuGrid& grid);

/// Lorentzian coherence time 1/(pi * linewidth), in ps for GHz input.
double coherence_time_ps(double linewidth_GHz);

}  // namespace fcs
