// Snapshot file format:
//   SUBFLOW-SNAPSHOT v1
//   grid <N_x> <N_y> <N_t>
//   components <m>
//   dtype f64le
//   <blank line>
//   m consecutive row-major 64-bit little-endian float blocks
// Files are written to a temporary and renamed, so no partial snapshot is
// ever visible.
#pragma once

#include <filesystem>
#include <vector>

#include "subflow/grid.hpp"

namespace subflow {

void write_snapshot(const std::filesystem::path& path, const std::vector<Field>& components);

struct Snapshot {
  GridSpec spec;
  std::vector<Field> components;
};
Snapshot read_snapshot(const std::filesystem::path& path);

}  // namespace subflow
