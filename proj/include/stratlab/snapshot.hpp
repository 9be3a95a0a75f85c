#pragma once
// Binary field snapshots. Layout (all integers and doubles little-endian):
//   bytes 0..7   "STRATLAB"
//   bytes 8..11  "SNAP"
//   bytes 12..15 uint32 format version (1)
//   uint64 n1, uint64 n2
//   n1 * n2 IEEE-754 doubles, row-major (vertical index fastest)

#include <cstdint>
#include <filesystem>
#include <vector>

#include "stratlab/grid.hpp"

namespace stratlab {

inline constexpr std::uint32_t kSnapshotVersion = 1;

struct Snapshot {
  std::uint64_t n1 = 0;
  std::uint64_t n2 = 0;
  std::vector<double> values;

  ScalarField to_field(int fd_order = 4) const;
};

void write_snapshot(const std::filesystem::path& path, const ScalarField& f);
Snapshot read_snapshot(const std::filesystem::path& path);

}  // namespace stratlab
