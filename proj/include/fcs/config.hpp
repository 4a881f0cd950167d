#pragma once

#include <string>

#include "fcs/scenario.hpp"

namespace fcs {

/// Applies a line-oriented key-value config ("section.key = value") on top
/// of a scenario. Values of physical quantities carry a mandatory unit
/// suffix (e.g. "500 uW", "350 ps", "10 GHz/K"); dimensionless values are
/// bare numbers. Lists are space-separated with a single trailing unit.
/// '#' starts a comment. Throws ConfigError with the offending key/line.
void apply_config_text(Scenario& scenario, const std::string& text);

/// File variant of apply_config_text. Throws IoError if unreadable.
void apply_config_file(Scenario& scenario, const std::string& path);

}  // namespace fcs
