#pragma once

#include <string>
#include <utility>

#include "fcs/detection.hpp"

namespace fcs {

// Binary time-tag export, little-endian throughout:
//   bytes 0-3   magic "FTAG"
//   byte  4     format version (1)
//   bytes 5-12  duration in ps, unsigned 64-bit
//   bytes 13-20 seed, unsigned 64-bit
//   then records of 9 bytes: label (0 = signal, 1 = idler) followed by the
//   timestamp in ps as unsigned 64-bit. Records are in chronological order
//   (signal first on ties).

inline constexpr char kTagFileMagic[4] = {'F', 'T', 'A', 'G'};
inline constexpr unsigned char kTagFileVersion = 1;

void write_tag_file(const std::string& path, const TimeTagStream& signal,
                    const TimeTagStream& idler);

std::pair<TimeTagStream, TimeTagStream> read_tag_file(const std::string& path);

}  // namespace fcs
