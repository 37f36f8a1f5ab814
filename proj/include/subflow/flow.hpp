// Explicit time integration of the regularized flow with adaptive step
// control that enforces discrete energy dissipation. Rejection is a value,
// not an error; chart exit and step underflow are reported terminations.
#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "subflow/energy.hpp"

namespace subflow {

struct FlowParams {
  double p = 2.0;
  double delta = 1e-2;     // in (0,1]; delta = 0 permitted only for p >= 2
  double dt0 = 1e-3;
  double t_max = 1.0;
  double dt_min = 1e-9;
  double stop_tol = 1e-6;  // threshold on the g-weighted L2 norm of d_t phi
  int max_rejects = 60;    // consecutive rejections before giving up
  double epsilon = 1.0;    // g_total mixing weight (diagnostic)
  int record_every = 10;   // accepted steps between trace rows

  void validate() const;
};

enum class Termination { converged, horizon, guard_abort, dt_underflow };
const char* to_string(Termination t);

struct TraceRow {
  long step = 0;
  double time = 0.0;
  EnergyReport report;
  double dissipation = 0.0;  // running integral of |d_t phi|^2_{L2,g}
};

struct StepLogEntry {
  long attempt = 0;
  double dt = 0.0;
  bool accepted = false;
};

struct FlowTrace {
  std::vector<TraceRow> rows;
  std::vector<StepLogEntry> step_log;
  double dissipation_integral = 0.0;
  Termination termination = Termination::horizon;
  long accepted_steps = 0;
  long rejected_steps = 0;
  double final_time = 0.0;
  double final_velocity_norm = 0.0;  // |d_t phi|_{L2,g} at the last accepted step
  double initial_sup_grad = 0.0;
  double max_sup_grad = 0.0;  // max over every accepted state
};

struct StepResult {
  bool accepted = false;
  std::optional<MapState> next;  // engaged iff accepted
  double energy_before = 0.0;
  double energy_after = 0.0;
};

// One forward-Euler candidate phi + dt * tension_p(phi); accepted iff it
// stays in the chart guard and does not increase Ep_delta (up to 1e-12
// relative slack).
StepResult step(const MapState& phi, const FlowParams& params, double dt);

// Called after every accepted step; used for snapshot cadence.
using StepHook = std::function<void(long accepted_steps, double time, const MapState& state)>;

std::pair<MapState, FlowTrace> run(const MapState& phi0, const FlowParams& params,
                                   const StepHook& hook = {});

struct ContinuationResult {
  std::vector<double> deltas;
  std::vector<MapState> finals;
  std::vector<FlowTrace> traces;
  // L2 chart-coordinate distances between consecutive final states
  std::vector<double> consecutive_distances;
};

// Runs the flow from the same initial state for each delta in a strictly
// decreasing positive list.
ContinuationResult delta_continuation(const MapState& phi0, FlowParams params,
                                      const std::vector<double>& deltas);

// Plain chart-coordinate L2 distance between two maps on the same grid.
double l2_distance(const MapState& a, const MapState& b);

}  // namespace subflow
