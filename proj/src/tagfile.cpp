#include "fcs/tagfile.hpp"

#include <cstring>
#include <filesystem>
#include <fstream>
#include <vector>

#include "fcs/errors.hpp"

namespace fcs {

namespace {

void put_u64le(std::string& out, std::uint64_t value) {
  for (int i = 0; i < 8; ++i)
    out.push_back(static_cast<char>((value >> (8 * i)) & 0xFF));
}

std::uint64_t get_u64le(const unsigned char* p) {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}

}  // namespace

void write_tag_file(const std::string& path, const TimeTagStream& signal,
                    const TimeTagStream& idler) {
  std::string out;
  out.reserve(21 + 9 * (signal.tags_ps.size() + idler.tags_ps.size()));
  out.append(kTagFileMagic, 4);
  out.push_back(static_cast<char>(kTagFileVersion));
  put_u64le(out, static_cast<std::uint64_t>(signal.duration_s * 1e12 + 0.5));
  put_u64le(out, signal.seed);

  std::size_t i = 0, j = 0;
  while (i < signal.tags_ps.size() || j < idler.tags_ps.size()) {
    bool take_signal =
        j >= idler.tags_ps.size() ||
        (i < signal.tags_ps.size() && signal.tags_ps[i] <= idler.tags_ps[j]);
    if (take_signal) {
      out.push_back(0);
      put_u64le(out, static_cast<std::uint64_t>(signal.tags_ps[i++]));
    } else {
      out.push_back(1);
      put_u64le(out, static_cast<std::uint64_t>(idler.tags_ps[j++]));
    }
  }

  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open tag file '" + path + "' for writing");
  file.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!file) throw IoError("write failed for tag file '" + path + "'");
}

std::pair<TimeTagStream, TimeTagStream> read_tag_file(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot read tag file '" + path + "'");
  std::vector<unsigned char> data((std::istreambuf_iterator<char>(file)),
                                  std::istreambuf_iterator<char>());
  if (data.size() < 21 || std::memcmp(data.data(), kTagFileMagic, 4) != 0)
    throw IoError("'" + path + "' is not a tag file (bad magic)");
  if (data[4] != kTagFileVersion)
    throw IoError("unsupported tag file version in '" + path + "'");
  if ((data.size() - 21) % 9 != 0)
    throw IoError("truncated tag file '" + path + "'");

  TimeTagStream signal, idler;
  signal.label = Arm::signal;
  idler.label = Arm::idler;
  signal.duration_s = static_cast<double>(get_u64le(&data[5])) * 1e-12;
  idler.duration_s = signal.duration_s;
  signal.seed = idler.seed = get_u64le(&data[13]);

  for (std::size_t off = 21; off + 9 <= data.size(); off += 9) {
    std::int64_t t = static_cast<std::int64_t>(get_u64le(&data[off + 1]));
    if (data[off] == 0)
      signal.tags_ps.push_back(t);
    else if (data[off] == 1)
      idler.tags_ps.push_back(t);
    else
      throw IoError("unknown record label in '" + path + "'");
  }
  return {std::move(signal), std::move(idler)};
}

}  // namespace fcs
