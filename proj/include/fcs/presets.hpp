#pragma once

#include <string>
#include <vector>

#include "fcs/scenario.hpp"

namespace fcs {

/// Named scenario presets. "paper-defaults" (aliases "paper-default" and
/// "paper-4pairs") is the full four-pair setup: 60 um ring with Q = 40000,
/// 500 uW pump on ITU channel 50, 22 dB arm budgets, 250/1100 dark counts/s,
/// 16 us dead time, 350 ps interferometer delay, and acquisitions sized for
/// >= 1e4 coincidences per fringe scan. Throws ConfigError for unknown names.
Scenario make_preset(const std::string& name);

std::vector<std::string> preset_names();

}  // namespace fcs
