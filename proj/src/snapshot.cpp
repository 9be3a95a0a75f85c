#include "stratlab/snapshot.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace stratlab {

namespace {

constexpr std::array<char, 12> kMagic = {'S', 'T', 'R', 'A', 'T', 'L', 'A', 'B', 'S', 'N', 'A', 'P'};

template <class T>
void put_le(std::ostream& os, T v) {
  static_assert(std::is_integral_v<T>);
  std::array<unsigned char, sizeof(T)> b{};
  for (std::size_t k = 0; k < sizeof(T); ++k) b[k] = static_cast<unsigned char>((v >> (8 * k)) & 0xff);
  os.write(reinterpret_cast<const char*>(b.data()), b.size());
}

template <class T>
T get_le(std::istream& is) {
  std::array<unsigned char, sizeof(T)> b{};
  is.read(reinterpret_cast<char*>(b.data()), b.size());
  if (!is) throw std::runtime_error("snapshot: truncated header");
  T v = 0;
  for (std::size_t k = 0; k < sizeof(T); ++k) v |= static_cast<T>(b[k]) << (8 * k);
  return v;
}

}  // namespace

ScalarField Snapshot::to_field(int fd_order) const {
  Grid g(static_cast<std::size_t>(n1), static_cast<std::size_t>(n2), fd_order);
  return ScalarField(g, values);
}

void write_snapshot(const std::filesystem::path& path, const ScalarField& f) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("snapshot: cannot open " + path.string());
  os.write(kMagic.data(), kMagic.size());
  put_le<std::uint32_t>(os, kSnapshotVersion);
  put_le<std::uint64_t>(os, f.grid().n1());
  put_le<std::uint64_t>(os, f.grid().n2());
  for (double v : f.values()) put_le<std::uint64_t>(os, std::bit_cast<std::uint64_t>(v));
  if (!os) throw std::runtime_error("snapshot: write failed for " + path.string());
}

Snapshot read_snapshot(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("snapshot: cannot open " + path.string());
  std::array<char, 12> magic{};
  is.read(magic.data(), magic.size());
  if (!is || magic != kMagic) throw std::runtime_error("snapshot: bad magic in " + path.string());
  const auto version = get_le<std::uint32_t>(is);
  if (version != kSnapshotVersion) throw std::runtime_error("snapshot: unsupported version");
  Snapshot s;
  s.n1 = get_le<std::uint64_t>(is);
  s.n2 = get_le<std::uint64_t>(is);
  if (s.n1 == 0 || s.n2 == 0 || s.n1 > (1u << 20) || s.n2 > (1u << 20))
    throw std::runtime_error("snapshot: implausible dimensions");
  s.values.resize(s.n1 * s.n2);
  for (double& v : s.values) v = std::bit_cast<double>(get_le<std::uint64_t>(is));
  return s;
}

}  // namespace stratlab
