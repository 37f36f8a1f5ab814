// Run configuration: flat key-value text, one `key = value` per line,
// `#` comments, unknown keys rejected. parse(serialize(c)) == c.
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "subflow/flow.hpp"
#include "subflow/map_state.hpp"

namespace subflow {

struct RunConfig {
  int grid_nx = 16, grid_ny = 16, grid_nt = 16;

  std::string target = "flat";  // flat | sphere | hyperbolic
  int target_dim = 1;
  double guard_radius = 4.0;    // sphere chart
  double guard_margin = 0.05;   // hyperbolic chart

  double p = 2.0;
  double delta = 1e-2;
  double epsilon = 1.0;

  double dt0 = 1e-3;
  double t_max = 1.0;
  double dt_min = 1e-9;
  double stop_tol = 1e-6;
  int max_rejects = 60;
  int record_every = 10;
  int snapshot_every = 0;  // accepted steps between snapshots; 0 = final only

  std::string init_kind = "constant";  // constant | eigenmode | random
  double init_amplitude = 0.1;         // eigenmode amplitude
  std::uint64_t seed = 1;
  double target_energy = 1e-2;  // random kind: Ep(phi, p) target
  int mollify_steps = 30;       // random kind: smoothing steps

  std::string out_dir = "out";

  bool operator==(const RunConfig&) const = default;

  GridSpec make_grid() const { return GridSpec(grid_nx, grid_ny, grid_nt); }
  TargetChart make_chart() const;
  FlowParams make_flow_params() const;
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);
std::string serialize_config(const RunConfig& c);

}  // namespace subflow
