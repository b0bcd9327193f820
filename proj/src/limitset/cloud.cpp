#include <bit>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "sp6/limitset.hpp"

namespace sp6 {

namespace {

GeneratorTag tag_from_char(char c) {
  switch (c) {
    case 'A': return GeneratorTag::A;
    case 'B': return GeneratorTag::B;
    case 'a': return GeneratorTag::a;
    case 'b': return GeneratorTag::b;
    case 's': return GeneratorTag::seed;
  }
  throw std::runtime_error("unknown point tag '" + std::string(1, c) + "'");
}

GeneratorTag tag_from_name(const std::string& s) {
  if (s == "seed") return GeneratorTag::seed;
  if (s.size() == 1 && s[0] != 's') return tag_from_char(s[0]);
  throw std::runtime_error("unknown point tag '" + s + "'");
}

std::uint64_t load_u64_le(const unsigned char* p) {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}

}  // namespace

std::string format_cloud_line(const CloudRecord& r) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g %s %u", r.xyz[0], r.xyz[1], r.xyz[2],
                std::string(tag_name(r.tag)).c_str(), static_cast<unsigned>(r.length));
  return buf;
}

std::vector<CloudRecord> read_cloud(const std::filesystem::path& path, CloudFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::vector<CloudRecord> out;
  if (format == CloudFormat::text) {
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      std::istringstream ls(line);
      CloudRecord r{};
      std::string tag;
      unsigned len = 0;
      if (!(ls >> r.xyz[0] >> r.xyz[1] >> r.xyz[2] >> tag >> len)) {
        throw std::runtime_error("malformed cloud line: " + line);
      }
      r.tag = tag_from_name(tag);
      r.length = static_cast<std::uint8_t>(len);
      out.push_back(r);
    }
    return out;
  }

  unsigned char header[16];
  if (!in.read(reinterpret_cast<char*>(header), sizeof header) ||
      std::string_view(reinterpret_cast<const char*>(header), 8) != kCloudMagic) {
    throw std::runtime_error(path.string() + " is not a binary point cloud");
  }
  const std::uint64_t count = load_u64_le(header + 8);
  unsigned char rec[kCloudRecordBytes];
  for (std::uint64_t i = 0; i < count; ++i) {
    if (!in.read(reinterpret_cast<char*>(rec), sizeof rec)) {
      throw std::runtime_error("truncated point cloud " + path.string());
    }
    CloudRecord r{};
    for (int k = 0; k < 3; ++k) r.xyz[k] = std::bit_cast<double>(load_u64_le(rec + 8 * k));
    r.tag = tag_from_char(static_cast<char>(rec[24]));
    r.length = rec[25];
    out.push_back(r);
  }
  return out;
}

}  // namespace sp6
