#include "fcs/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <vector>

#include "fcs/errors.hpp"

namespace fcs {

namespace {

enum class Dim {
  none,       // bare number
  time_s,     // s ms us ns ps
  freq_THz,   // THz GHz MHz kHz Hz
  power_uW,   // W mW uW nW
  decibel,    // dB
  kelvin,     // K
  rate_hz,    // /s or Hz
  angle_rad,  // rad
  length_um,  // m mm um nm
  ghz_per_K,  // GHz/K
};

double unit_factor(Dim dim, const std::string& unit, const std::string& key) {
  static const std::map<Dim, std::map<std::string, double>> kUnits = {
      {Dim::time_s,
       {{"s", 1.0}, {"ms", 1e-3}, {"us", 1e-6}, {"µs", 1e-6},
        {"ns", 1e-9}, {"ps", 1e-12}}},
      {Dim::freq_THz,
       {{"THz", 1.0}, {"GHz", 1e-3}, {"MHz", 1e-6}, {"kHz", 1e-9}, {"Hz", 1e-12}}},
      {Dim::power_uW,
       {{"W", 1e6}, {"mW", 1e3}, {"uW", 1.0}, {"µW", 1.0}, {"nW", 1e-3}}},
      {Dim::decibel, {{"dB", 1.0}}},
      {Dim::kelvin, {{"K", 1.0}}},
      {Dim::rate_hz, {{"/s", 1.0}, {"Hz", 1.0}, {"kHz", 1e3}, {"MHz", 1e6}}},
      {Dim::angle_rad, {{"rad", 1.0}}},
      {Dim::length_um,
       {{"m", 1e6}, {"mm", 1e3}, {"um", 1.0}, {"µm", 1.0}, {"nm", 1e-3}}},
      {Dim::ghz_per_K, {{"GHz/K", 1.0}}},
  };

  if (dim == Dim::none) {
    if (!unit.empty())
      throw ConfigError("config key '" + key + "' is dimensionless; got unit '" +
                        unit + "'");
    return 1.0;
  }
  if (unit.empty())
    throw ConfigError("config key '" + key + "' requires a unit suffix");
  const auto& table = kUnits.at(dim);
  auto it = table.find(unit);
  if (it == table.end())
    throw ConfigError("config key '" + key + "' has unsupported unit '" + unit + "'");
  return it->second;
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

bool is_number_token(const std::string& tok) {
  char* end = nullptr;
  std::strtod(tok.c_str(), &end);
  return end && *end == '\0' && end != tok.c_str();
}

struct ParsedValue {
  std::vector<double> numbers;
  std::string unit;
};

ParsedValue parse_value(const std::string& raw, const std::string& key) {
  std::istringstream in(raw);
  ParsedValue parsed;
  std::string tok;
  while (in >> tok) {
    if (is_number_token(tok)) {
      if (!parsed.unit.empty())
        throw ConfigError("config key '" + key + "': unit must come last");
      parsed.numbers.push_back(std::strtod(tok.c_str(), nullptr));
    } else {
      if (!parsed.unit.empty())
        throw ConfigError("config key '" + key + "': multiple unit tokens");
      parsed.unit = tok;
    }
  }
  return parsed;
}

using Setter = std::function<void(Scenario&, const ParsedValue&, const std::string&)>;

double scalar(const ParsedValue& v, Dim dim, const std::string& key) {
  if (v.numbers.size() != 1)
    throw ConfigError("config key '" + key + "' expects a single value");
  return v.numbers[0] * unit_factor(dim, v.unit, key);
}

std::vector<double> list(const ParsedValue& v, Dim dim, const std::string& key) {
  if (v.numbers.empty())
    throw ConfigError("config key '" + key + "' has no numeric value");
  double f = unit_factor(dim, v.unit, key);
  std::vector<double> out = v.numbers;
  for (double& x : out) x *= f;
  return out;
}

long long integer(const ParsedValue& v, const std::string& key) {
  double x = scalar(v, Dim::none, key);
  long long n = static_cast<long long>(std::llround(x));
  if (std::abs(x - static_cast<double>(n)) > 1e-9)
    throw ConfigError("config key '" + key + "' expects an integer");
  return n;
}

bool boolean(const ParsedValue& v, const std::string& key) {
  if (v.numbers.empty()) {
    if (v.unit == "true") return true;
    if (v.unit == "false") return false;
  } else if (v.numbers.size() == 1 && v.unit.empty()) {
    if (v.numbers[0] == 0.0) return false;
    if (v.numbers[0] == 1.0) return true;
  }
  throw ConfigError("config key '" + key + "' expects true/false or 0/1");
}

const std::map<std::string, Setter>& key_table() {
  static const std::map<std::string, Setter> table = {
      {"resonator.radius",
       [](Scenario& s, const ParsedValue& v, const std::string& k) {
         s.resonator.radius_um = scalar(v, Dim::length_um, k);
       }},
      {"resonator.group_index",
       [](Scenario& s, const ParsedValue& v, const std::string& k) {
         s.resonator.group_index = scalar(v, Dim::none, k);
       }},
      {"resonator.q_factor",
       [](Scenario& s, const ParsedValue& v, const std::string& k) {
         s.resonator.q_factor = scalar(v, Dim::none, k);
       }},
      {"resonator.extinction",
       [](Scenario& s, const ParsedValue& v, const std::string& k) {
         s.resonator.extinction_dB = scalar(v, Dim::decibel, k);
       }},
      {"resonator.dispersion_d2",
       [](Scenario& s, const ParsedValue& v, const std::string& k) {
         s.resonator.dispersion_d2_GHz = scalar(v, Dim::freq_THz, k) * 1e3;
       }},
      {"resonator.pump_resonance",
       [](Scenario& s, const ParsedValue& v, const std::string& k) {
         s.resonator.pump_resonance_THz = scalar(v, Dim::freq_THz, k);
       }},
      {"resonator.temperature_offset",
       [](Scenario& s, const ParsedValue& v, const std::string& k) {
         s.resonator.temperature_offset_K = scalar(v, Dim::kelvin, k);
       }},
      {"resonator.thermal_coeff",
       [](Scenario& s, const ParsedValue& v, const std::string& k) {
         s.resonator.thermal_coeff_GHz_per_K = scalar(v, Dim::ghz_per_K, k);
       }},
      {"grid.base",
       [](Scenario& s, const ParsedValue& v, const std::string& k) {
         s.grid.base_THz = scalar(v, Dim::freq_THz, k);
       }},
      {"grid.spacing",
       [](Scenario& s, const ParsedValue& v, const std::string& k) {
         s.grid.spacing_GHz = scalar(v, Dim::freq_THz, k) * 1e3;
       }},
      {"grid.passband_halfwidth",
       [](Scenario& s, const ParsedValue& v, const std::string& k) {
         s.grid.passband_halfwidth_GHz = scalar(v, Dim::freq_THz, k) * 1e3;
       }},
      {"source.calib_power",
       [](Scenario& s, const ParsedValue& v, const std::string& k) {
         s.source.calib_power_uW = scalar(v, Dim::power_uW, k);
       }},
      {"source.calib_rate",
       [](Scenario& s, const ParsedValue& v, const std::string& k) {
         s.source.calib_rate_hz = scalar(v, Dim::rate_hz, k);
       }},
      {"source.pump_channel",
       [](Scenario& s, const ParsedValue& v, const std::string& k) {
         s.source.pump_channel = static_cast<int>(integer(v, k));
       }},
      {"source.pair_offsets",
       [](Scenario& s, const ParsedValue& v, const std::string& k) {
         if (!v.unit.empty())
           throw ConfigError("config key '" + k + "' is dimensionless");
         s.source.active_pairs.clear();
         for (double x : v.numbers) {
           int off = static_cast<int>(std::llround(x));
           s.source.active_pairs.push_back(
               make_channel_pair(s.source.pump_channel, off));
         }
         s.source.per_pair_weights.assign(
             s.source.active_pairs.size(),
             1.0 / static_cast<double>(s.source.active_pairs.size()));
         s.intrinsic_visibility.resize(s.source.active_pairs.size(), 0.99);
       }},
      {"source.pair_weights",
       [](Scenario& s, const ParsedValue& v, const std::string& k) {
         s.source.per_pair_weights = list(v, Dim::none, k);
       }},
      {"source.pump_power",
       [](Scenario& s, const ParsedValue& v, const std::string& k) {
         s.pump_power_uW = scalar(v, Dim::power_uW, k);
       }},
      {"source.pump_coherence",
       [](Scenario& s, const ParsedValue& v, const std::string& k) {
         s.pump_coherence_ns = scalar(v, Dim::time_s, k) * 1e9;
       }},
      {"source.mu",
       [](Scenario& s, const ParsedValue& v, const std::string& k) {
         s.mu_pairs_per_window = scalar(v, Dim::none, k);
       }},
      {"interferometer.delta_T",
       [](Scenario& s, const ParsedValue& v, const std::string& k) {
         s.interferometer.delta_T_ps = scalar(v, Dim::time_s, k) * 1e12;
       }},
      {"interferometer.visibility",
       [](Scenario& s, const ParsedValue& v, const std::string& k) {
         std::vector<double> values = list(v, Dim::none, k);
         if (values.size() == 1)
           s.intrinsic_visibility.assign(s.source.active_pairs.size(), values[0]);
         else
           s.intrinsic_visibility = values;
       }},
      {"interferometer.phase_setpoint",
       [](Scenario& s, const ParsedValue& v, const std::string& k) {
         s.interferometer.phase_setpoint_rad = scalar(v, Dim::angle_rad, k);
       }},
      {"interferometer.residual_phase_rms",
       [](Scenario& s, const ParsedValue& v, const std::string& k) {
         s.interferometer.residual_phase_rms_rad = scalar(v, Dim::angle_rad, k);
       }},
      {"interferometer.loop_bandwidth",
       [](Scenario& s, const ParsedValue& v, const std::string& k) {
         s.interferometer.loop_bandwidth_hz = scalar(v, Dim::rate_hz, k);
       }},
      {"analysis.dark_only_accidentals",
       [](Scenario& s, const ParsedValue& v, const std::string& k) {
         s.dark_only_accidentals = boolean(v, k);
       }},
      {"scan.phase_points",
       [](Scenario& s, const ParsedValue& v, const std::string& k) {
         s.scan.phase_points = static_cast<int>(integer(v, k));
       }},
      {"scan.phase_span",
       [](Scenario& s, const ParsedValue& v, const std::string& k) {
         s.scan.phase_span_rad = scalar(v, Dim::angle_rad, k);
       }},
      {"scan.acquisition",
       [](Scenario& s, const ParsedValue& v, const std::string& k) {
         s.scan.acquisition_s = scalar(v, Dim::time_s, k);
       }},
      {"scan.bin_width",
       [](Scenario& s, const ParsedValue& v, const std::string& k) {
         s.scan.bin_width_ps = std::llround(scalar(v, Dim::time_s, k) * 1e12);
       }},
      {"scan.hist_half_range",
       [](Scenario& s, const ParsedValue& v, const std::string& k) {
         s.scan.hist_half_range_ps = std::llround(scalar(v, Dim::time_s, k) * 1e12);
       }},
      {"scan.window_halfwidth",
       [](Scenario& s, const ParsedValue& v, const std::string& k) {
         s.scan.window_halfwidth_ps = scalar(v, Dim::time_s, k) * 1e12;
       }},
      {"rates.powers",
       [](Scenario& s, const ParsedValue& v, const std::string& k) {
         s.rates_powers_uW = list(v, Dim::power_uW, k);
       }},
      {"rates.duration",
       [](Scenario& s, const ParsedValue& v, const std::string& k) {
         s.rates_duration_s = scalar(v, Dim::time_s, k);
       }},
      {"histogram.duration",
       [](Scenario& s, const ParsedValue& v, const std::string& k) {
         s.histogram_duration_s = scalar(v, Dim::time_s, k);
       }},
      {"spectrum.mode_min",
       [](Scenario& s, const ParsedValue& v, const std::string& k) {
         s.spectrum_mode_min = static_cast<int>(integer(v, k));
       }},
      {"spectrum.mode_max",
       [](Scenario& s, const ParsedValue& v, const std::string& k) {
         s.spectrum_mode_max = static_cast<int>(integer(v, k));
       }},
      {"run.seed",
       [](Scenario& s, const ParsedValue& v, const std::string& k) {
         long long n = integer(v, k);
         if (n < 0) throw ConfigError("config key '" + k + "' must be >= 0");
         s.seed = static_cast<std::uint64_t>(n);
       }},
  };
  return table;
}

}  // namespace

void apply_config_text(Scenario& scenario, const std::string& text) {
  const auto& table = key_table();
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": expected 'key = value'");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));

    // detector.{signal,idler}.* share one field set.
    Setter setter;
    auto it = table.find(key);
    if (it != table.end()) {
      setter = it->second;
    } else if (key.rfind("detector.", 0) == 0) {
      std::string rest = key.substr(9);
      std::size_t dot = rest.find('.');
      if (dot != std::string::npos) {
        std::string arm = rest.substr(0, dot);
        std::string field = rest.substr(dot + 1);
        DetectorParams Scenario::*member = nullptr;
        if (arm == "signal") member = &Scenario::det_signal;
        if (arm == "idler") member = &Scenario::det_idler;
        if (member) {
          if (field == "arm_loss")
            setter = [member](Scenario& s, const ParsedValue& v, const std::string& k) {
              (s.*member).arm_loss_dB = scalar(v, Dim::decibel, k);
            };
          else if (field == "dark_rate")
            setter = [member](Scenario& s, const ParsedValue& v, const std::string& k) {
              (s.*member).dark_rate_hz = scalar(v, Dim::rate_hz, k);
            };
          else if (field == "dead_time")
            setter = [member](Scenario& s, const ParsedValue& v, const std::string& k) {
              (s.*member).dead_time_us = scalar(v, Dim::time_s, k) * 1e6;
            };
          else if (field == "jitter_sigma")
            setter = [member](Scenario& s, const ParsedValue& v, const std::string& k) {
              (s.*member).jitter_sigma_ps = scalar(v, Dim::time_s, k) * 1e12;
            };
          else if (field == "background_rate")
            setter = [member](Scenario& s, const ParsedValue& v, const std::string& k) {
              (s.*member).background_rate_hz = scalar(v, Dim::rate_hz, k);
            };
        }
      }
    }
    if (!setter)
      throw ConfigError("unknown config key '" + key + "' (line " +
                        std::to_string(line_no) + ")");
    setter(scenario, parse_value(value, key), key);
  }
}

void apply_config_file(Scenario& scenario, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  apply_config_text(scenario, buffer.str());
}

}  // namespace fcs
