#include "jetflow/container.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace jetflow {

static_assert(std::endian::native == std::endian::little,
              "container writer assumes a little-endian host");

namespace {
constexpr char kMagic[8] = {'J', 'F', 'A', 'R', 'R', 'A', 'Y', '1'};
constexpr std::uint32_t kVersion = 1;
} // namespace

void write_snapshot(const std::string& path, const PhysicalField& f, bool real_flag) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_snapshot: cannot open " + path);
  out.write(kMagic, 8);
  const std::uint32_t ver = kVersion;
  out.write(reinterpret_cast<const char*>(&ver), 4);
  const unsigned char hdr[4] = {0x01, static_cast<unsigned char>(ncomp(f.rank)),
                                static_cast<unsigned char>(real_flag ? 1 : 0), 0x00};
  out.write(reinterpret_cast<const char*>(hdr), 4);
  const std::uint32_t n = static_cast<std::uint32_t>(f.grid.n);
  out.write(reinterpret_cast<const char*>(&n), 4);
  out.write(reinterpret_cast<const char*>(f.v.data()),
            static_cast<std::streamsize>(f.v.size() * sizeof(double)));
  if (!out) throw std::runtime_error("write_snapshot: short write to " + path);
}

PhysicalField read_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_snapshot: cannot open " + path);
  char magic[8];
  in.read(magic, 8);
  if (std::memcmp(magic, kMagic, 8) != 0) throw std::runtime_error("read_snapshot: bad magic in " + path);
  std::uint32_t ver = 0;
  in.read(reinterpret_cast<char*>(&ver), 4);
  if (ver != kVersion) throw std::runtime_error("read_snapshot: unsupported version");
  unsigned char hdr[4];
  in.read(reinterpret_cast<char*>(hdr), 4);
  if (hdr[0] != 0x01) throw std::runtime_error("read_snapshot: endianness marker mismatch");
  Rank rank;
  switch (hdr[1]) {
    case 1: rank = Rank::scalar; break;
    case 3: rank = Rank::vector3; break;
    case 9: rank = Rank::tensor3x3; break;
    default: throw std::runtime_error("read_snapshot: bad rank code");
  }
  std::uint32_t n = 0;
  in.read(reinterpret_cast<char*>(&n), 4);
  PhysicalField f(Grid3(static_cast<int>(n)), rank);
  in.read(reinterpret_cast<char*>(f.v.data()), static_cast<std::streamsize>(f.v.size() * sizeof(double)));
  if (!in) throw std::runtime_error("read_snapshot: truncated payload in " + path);
  return f;
}

void write_field(const std::string& path, const SpectralField& f) {
  write_snapshot(path, inverse_transform(f), f.is_real());
}

SpectralField read_field(const std::string& path) { return transform(read_snapshot(path)); }

} // namespace jetflow
