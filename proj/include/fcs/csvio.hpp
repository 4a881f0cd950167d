#pragma once

#include <map>
#include <string>
#include <vector>

#include "fcs/coincidence.hpp"
#include "fcs/resonator.hpp"
#include "fcs/scenario.hpp"

namespace fcs {

/// Every CSV starts with this version comment.
inline constexpr const char* kCsvHeader = "# franson-comb-sim v1";

/// Writes atomically: temp file in the target directory, then rename.
void atomic_write(const std::string& path, const std::string& contents);

/// mode_index,center_freq_THz,linewidth_GHz,itu_channel (blank if unassigned).
std::string comb_table_csv(const std::vector<CombLine>& comb,
                           const std::map<int, int>& channels);

/// freq_THz,transmission sampled over [lo, hi].
std::string transmission_curve_csv(const ResonatorParams& params, double lo_THz,
                                   double hi_THz, double step_GHz);

/// bin_center_ps,counts.
std::string histogram_csv(const CoincidenceHistogram& hist);

/// phase_rad,counts,acquisition_s.
std::string fringe_scan_csv(const FringeScan& scan);

/// Parses a fringe-scan CSV produced by fringe_scan_csv.
FringeScan read_fringe_scan_csv(const std::string& path);

/// power_uW,internal_rate_hz,singles_signal_hz,singles_idler_hz,
/// coincidence_rate_hz,inferred_internal_rate_hz plus slope footers.
std::string power_sweep_csv(const PowerSweepResult& sweep);

/// Human-readable visibility report.
std::string report_text(const std::vector<PairFringeOutcome>& outcomes,
                        std::uint64_t seed);

/// Machine-readable key-value report (pair.<s>_<i>.raw_visibility = ...).
std::string report_keyvalue(const std::vector<PairFringeOutcome>& outcomes,
                            std::uint64_t seed);

}  // namespace fcs
