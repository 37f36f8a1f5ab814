#include "subflow/flow.hpp"

#include <cmath>
#include <stdexcept>

namespace subflow {

void FlowParams::validate() const {
  if (!(p > 1.0)) throw std::invalid_argument("FlowParams: p must be > 1");
  if (delta < 0.0 || delta > 1.0) throw std::invalid_argument("FlowParams: delta in [0,1]");
  if (delta == 0.0 && p < 2.0)
    throw std::invalid_argument("FlowParams: delta = 0 requires p >= 2 (singular weight)");
  if (!(dt_min > 0.0) || !(dt0 >= dt_min)) throw std::invalid_argument("FlowParams: need 0 < dt_min <= dt0");
  if (!(stop_tol > 0.0)) throw std::invalid_argument("FlowParams: stop_tol must be > 0");
  if (t_max <= 0.0) throw std::invalid_argument("FlowParams: t_max must be > 0");
  if (record_every < 1) throw std::invalid_argument("FlowParams: record_every must be >= 1");
}

const char* to_string(Termination t) {
  switch (t) {
    case Termination::converged: return "converged";
    case Termination::horizon: return "horizon";
    case Termination::guard_abort: return "guard_abort";
    case Termination::dt_underflow: return "dt_underflow";
  }
  return "unknown";
}

namespace {

MapState euler_candidate(const MapState& phi, const std::vector<Field>& tau, double dt) {
  MapState next = phi;
  const int m = phi.dim();
  for (int c = 0; c < m; ++c) {
    Field& f = next.components[c];
    const Field& t = tau[c];
    for (std::size_t n = 0; n < f.size(); ++n) f[n] += dt * t[n];
  }
  return next;
}

bool energy_acceptable(double e_before, double e_after) {
  return e_after <= e_before + 1e-12 * std::abs(e_before);
}

}  // namespace

StepResult step(const MapState& phi, const FlowParams& params, double dt) {
  params.validate();
  const std::vector<Field> tau = tension_p(phi, params.p, params.delta);
  MapState cand = euler_candidate(phi, tau, dt);
  StepResult out;
  out.energy_before = Ep_delta(phi, params.p, params.delta);
  if (!cand.in_guard()) return out;
  out.energy_after = Ep_delta(cand, params.p, params.delta);
  if (!energy_acceptable(out.energy_before, out.energy_after)) return out;
  out.accepted = true;
  out.next = std::move(cand);
  return out;
}

std::pair<MapState, FlowTrace> run(const MapState& phi0, const FlowParams& params,
                                   const StepHook& hook) {
  params.validate();
  if (!phi0.in_guard()) throw ChartGuardError("initial map leaves the chart");

  MapState phi = phi0;
  FlowTrace trace;
  double energy = Ep_delta(phi, params.p, params.delta);
  double t = 0.0;
  double dt = params.dt0;
  long attempt = 0;
  int accept_streak = 0;
  int reject_streak = 0;

  {
    TraceRow row{0, 0.0, energy_report(phi, params.p, params.delta, params.epsilon), 0.0};
    trace.initial_sup_grad = row.report.sup_grad;
    trace.max_sup_grad = row.report.sup_grad;
    trace.rows.push_back(row);
  }

  trace.termination = Termination::horizon;
  while (t < params.t_max) {
    const TensionResult tr = tension_eval(phi, params.p, params.delta);
    bool moved = false;
    while (true) {
      ++attempt;
      MapState cand = euler_candidate(phi, tr.tau, dt);
      bool ok = cand.in_guard();
      double cand_energy = 0.0;
      if (ok) {
        cand_energy = Ep_delta(cand, params.p, params.delta);
        ok = energy_acceptable(energy, cand_energy);
      }
      trace.step_log.push_back({attempt, dt, ok});
      if (ok) {
        const double vel = g_weighted_l2(phi, tr.tau);
        trace.dissipation_integral += vel * vel * dt;
        trace.final_velocity_norm = vel;
        phi = std::move(cand);
        energy = cand_energy;
        t += dt;
        ++trace.accepted_steps;
        ++accept_streak;
        reject_streak = 0;
        trace.max_sup_grad = std::max(trace.max_sup_grad, std::sqrt(tr.max_grad2));
        if (accept_streak >= 10 && dt < params.dt0) {
          dt = std::min(2.0 * dt, params.dt0);
          accept_streak = 0;
        }
        if (trace.accepted_steps % params.record_every == 0) {
          trace.rows.push_back({trace.accepted_steps, t,
                                energy_report(phi, params.p, params.delta, params.epsilon),
                                trace.dissipation_integral});
        }
        if (hook) hook(trace.accepted_steps, t, phi);
        if (vel < params.stop_tol) {
          trace.termination = Termination::converged;
        }
        moved = true;
        break;
      }
      ++trace.rejected_steps;
      ++reject_streak;
      accept_streak = 0;
      if (dt <= params.dt_min || reject_streak > params.max_rejects) {
        MapState probe = euler_candidate(phi, tr.tau, params.dt_min);
        trace.termination = probe.in_guard() ? Termination::dt_underflow : Termination::guard_abort;
        break;
      }
      dt = std::max(0.5 * dt, params.dt_min);
    }
    if (!moved || trace.termination == Termination::converged) break;
  }
  trace.final_time = t;

  if (trace.rows.back().step != trace.accepted_steps) {
    trace.rows.push_back({trace.accepted_steps, t,
                          energy_report(phi, params.p, params.delta, params.epsilon),
                          trace.dissipation_integral});
  }
  return {std::move(phi), std::move(trace)};
}

ContinuationResult delta_continuation(const MapState& phi0, FlowParams params,
                                      const std::vector<double>& deltas) {
  if (deltas.empty()) throw std::invalid_argument("delta_continuation: empty delta list");
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    if (deltas[i] <= 0.0) throw std::invalid_argument("delta_continuation: deltas must be positive");
    if (i > 0 && !(deltas[i] < deltas[i - 1]))
      throw std::invalid_argument("delta_continuation: deltas must be strictly decreasing");
  }
  ContinuationResult out;
  out.deltas = deltas;
  for (double d : deltas) {
    params.delta = d;
    auto [final, trace] = run(phi0, params);
    out.finals.push_back(std::move(final));
    out.traces.push_back(std::move(trace));
  }
  for (std::size_t i = 0; i + 1 < out.finals.size(); ++i)
    out.consecutive_distances.push_back(l2_distance(out.finals[i], out.finals[i + 1]));
  return out;
}

double l2_distance(const MapState& a, const MapState& b) {
  if (a.dim() != b.dim() || !(a.spec() == b.spec()))
    throw std::invalid_argument("l2_distance: mismatched maps");
  Field q(a.spec());
  for (int c = 0; c < a.dim(); ++c)
    for (std::size_t n = 0; n < q.size(); ++n) {
      const double d = a.components[c][n] - b.components[c][n];
      q[n] += d * d;
    }
  return std::sqrt(integrate(q));
}

}  // namespace subflow
