#include "fcs/csvio.hpp"

#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fcs/errors.hpp"

namespace fcs {

namespace {

std::string fmt(const char* format, ...) {
  char buf[256];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof(buf), format, args);
  va_end(args);
  return buf;
}

}  // namespace

void atomic_write(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  fs::path target(path);
  fs::path dir = target.parent_path();
  if (dir.empty()) dir = ".";
  std::error_code ec;
  fs::create_directories(dir, ec);

  fs::path tmp = dir / (target.filename().string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
    out << contents;
    if (!out) throw IoError("write failed for '" + tmp.string() + "'");
  }
  fs::rename(tmp, target, ec);
  if (ec) throw IoError("cannot rename '" + tmp.string() + "' to '" + path + "'");
}

std::string comb_table_csv(const std::vector<CombLine>& comb,
                           const std::map<int, int>& channels) {
  std::ostringstream out;
  out << kCsvHeader << "\n";
  out << "mode_index,center_freq_THz,linewidth_GHz,itu_channel\n";
  for (const CombLine& line : comb) {
    out << line.mode_index << ',' << fmt("%.9f", line.center_THz) << ','
        << fmt("%.6f", line.linewidth_GHz) << ',';
    auto it = channels.find(line.mode_index);
    if (it != channels.end()) out << it->second;
    out << '\n';
  }
  return out.str();
}

std::string transmission_curve_csv(const ResonatorParams& params, double lo_THz,
                                   double hi_THz, double step_GHz) {
  if (!(step_GHz > 0.0) || !(hi_THz > lo_THz))
    throw std::invalid_argument("transmission span must be increasing with step > 0");
  std::ostringstream out;
  out << kCsvHeader << "\n";
  out << "freq_THz,transmission\n";
  const double step_THz = step_GHz * 1e-3;
  for (double f = lo_THz; f <= hi_THz + 1e-12; f += step_THz)
    out << fmt("%.9f", f) << ',' << fmt("%.8f", transmission(params, f)) << '\n';
  return out.str();
}

std::string histogram_csv(const CoincidenceHistogram& hist) {
  std::ostringstream out;
  out << kCsvHeader << "\n";
  out << "bin_center_ps,counts\n";
  for (std::size_t i = 0; i < hist.bins.size(); ++i)
    out << hist.bin_center_ps(i) << ',' << hist.bins[i] << '\n';
  return out.str();
}

std::string fringe_scan_csv(const FringeScan& scan) {
  std::ostringstream out;
  out << kCsvHeader << "\n";
  out << "phase_rad,counts,acquisition_s\n";
  for (std::size_t i = 0; i < scan.phases_rad.size(); ++i)
    out << fmt("%.9f", scan.phases_rad[i]) << ',' << scan.counts[i] << ','
        << fmt("%.6f", scan.acquisition_time_per_point_s) << '\n';
  return out.str();
}

FringeScan read_fringe_scan_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read fringe scan '" + path + "'");
  FringeScan scan;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (line.rfind("phase_rad", 0) == 0) continue;
    std::istringstream row(line);
    std::string a, b, c;
    if (!std::getline(row, a, ',') || !std::getline(row, b, ',') ||
        !std::getline(row, c, ','))
      throw IoError("malformed fringe row in '" + path + "'");
    scan.phases_rad.push_back(std::strtod(a.c_str(), nullptr));
    scan.counts.push_back(std::strtoll(b.c_str(), nullptr, 10));
    scan.acquisition_time_per_point_s = std::strtod(c.c_str(), nullptr);
  }
  return scan;
}

std::string power_sweep_csv(const PowerSweepResult& sweep) {
  std::ostringstream out;
  out << kCsvHeader << "\n";
  out << "power_uW,internal_rate_hz,singles_signal_hz,singles_idler_hz,"
         "coincidence_rate_hz,inferred_internal_rate_hz\n";
  for (const PowerSweepRow& row : sweep.rows)
    out << fmt("%.3f", row.power_uW) << ',' << fmt("%.3f", row.internal_rate_hz)
        << ',' << fmt("%.3f", row.singles_signal_hz) << ','
        << fmt("%.3f", row.singles_idler_hz) << ','
        << fmt("%.4f", row.coincidence_rate_hz) << ','
        << fmt("%.3f", row.inferred_internal_rate_hz) << '\n';
  out << fmt("# analytic_loglog_slope = %.6f\n", sweep.analytic_loglog_slope);
  out << fmt("# mc_loglog_slope = %.6f\n", sweep.mc_loglog_slope);
  return out.str();
}

namespace {

std::string pair_tag(const ChannelPair& pair) {
  return std::to_string(pair.signal_channel) + "_" +
         std::to_string(pair.idler_channel);
}

}  // namespace

std::string report_text(const std::vector<PairFringeOutcome>& outcomes,
                        std::uint64_t seed) {
  std::ostringstream out;
  out << "franson-comb-sim visibility report (seed " << seed << ")\n";
  out << "pair      raw V            net V            bell      significance\n";
  for (const PairFringeOutcome& o : outcomes) {
    out << fmt("%2d/%2d  ", o.pair.signal_channel, o.pair.idler_channel);
    out << fmt("%.4f +- %.4f  ", o.raw.visibility, o.raw.sigma);
    out << fmt("%.4f +- %.4f  ", o.net.visibility, o.net.sigma);
    out << (o.bell.pass ? "pass  " : "FAIL  ");
    out << fmt("%8.1f sigma\n", o.bell.significance);
  }
  return out.str();
}

std::string report_keyvalue(const std::vector<PairFringeOutcome>& outcomes,
                            std::uint64_t seed) {
  std::ostringstream out;
  out << kCsvHeader << "\n";
  out << "run.seed = " << seed << "\n";
  for (const PairFringeOutcome& o : outcomes) {
    const std::string p = "pair." + pair_tag(o.pair);
    out << p << ".raw_visibility = " << fmt("%.6f", o.raw.visibility) << "\n";
    out << p << ".raw_sigma = " << fmt("%.6f", o.raw.sigma) << "\n";
    out << p << ".net_visibility = " << fmt("%.6f", o.net.visibility) << "\n";
    out << p << ".net_sigma = " << fmt("%.6f", o.net.sigma) << "\n";
    out << p << ".accidental_rate_hz = " << fmt("%.9f", o.accidental_rate_hz) << "\n";
    out << p << ".bell_pass = " << (o.bell.pass ? "true" : "false") << "\n";
    out << p << ".bell_significance = " << fmt("%.3f", o.bell.significance) << "\n";
  }
  return out.str();
}

}  // namespace fcs
