#pragma once

#include <cmath>

namespace fcs {

// Vacuum speed of light.
inline constexpr double kSpeedOfLight_m_per_s = 299792458.0;
inline constexpr double kSpeedOfLight_nm_THz = 299792.458;  // c in nm*THz

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Power (or rate) transmission factor for a loss given in dB.
inline double db_to_transmission(double loss_dB) {
  return std::pow(10.0, -loss_dB / 10.0);
}

/// Frequency (THz) to vacuum wavelength (nm).
inline double freq_THz_to_wavelength_nm(double freq_THz) {
  return kSpeedOfLight_nm_THz / freq_THz;
}

/// Vacuum wavelength (nm) to frequency (THz).
inline double wavelength_nm_to_freq_THz(double wavelength_nm) {
  return kSpeedOfLight_nm_THz / wavelength_nm;
}

}  // namespace fcs
