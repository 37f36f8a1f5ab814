#include "subflow/verification.hpp"

#include <cmath>
#include <numbers>

#include "subflow/initial_data.hpp"
#include "subflow/rng.hpp"

namespace subflow {

namespace {

Field random_field(const GridSpec& spec, SplitMix64& rng) {
  Field f(spec);
  for (std::size_t n = 0; n < f.size(); ++n) f[n] = rng.symmetric();
  return f;
}

// smooth in-guard random map: mollified noise, image radius well inside
// every built-in chart
MapState smooth_random_map(const GridSpec& spec, const TargetChart& chart, SplitMix64& rng,
                           double amplitude = 0.4, int mollify = 5) {
  MapState phi(spec, chart);
  for (Field& c : phi.components)
    for (std::size_t n = 0; n < c.size(); ++n) c[n] = amplitude * rng.symmetric();
  const double hmin = std::min({spec.hx(), spec.hy(), spec.ht()});
  const double dt = hmin * hmin / 12.0;
  for (int s = 0; s < mollify; ++s)
    for (Field& c : phi.components) {
      const Field lap = sublaplacian(c);
      for (std::size_t n = 0; n < c.size(); ++n) c[n] += dt * lap[n];
    }
  return phi;
}

}  // namespace

Verdict check_summation_by_parts(const std::vector<int>& sizes, int pairs, std::uint64_t seed) {
  Verdict v{"summation-by-parts"};
  v.thresholds = {{"normalized_defect", 1e-12}};
  SplitMix64 rng(seed);
  double worst = 0.0;
  for (int n : sizes) {
    GridSpec spec(n, n, n);
    for (int t = 0; t < pairs; ++t) {
      const Field f = random_field(spec, rng);
      const HorizontalVector w(random_field(spec, rng), random_field(spec, rng));
      Field prod(spec);
      const Field dw = div_b(w);
      for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = f[i] * dw[i];
      const double lhs = integrate(prod);
      const HorizontalVector gf = grad_b(f);
      for (std::size_t i = 0; i < prod.size(); ++i)
        prod[i] = gf.wx[i] * w.wx[i] + gf.wy[i] * w.wy[i];
      const double rhs = integrate(prod);
      const double scale = std::max(max_abs(f) * std::max(max_abs(w.wx), max_abs(w.wy)), 1e-30);
      worst = std::max(worst, std::abs(lhs + rhs) / scale);
    }
  }
  v.measured = {{"worst_normalized_defect", worst}};
  v.pass = worst <= 1e-12;
  return v;
}

Verdict check_gradient_consistency(int n, int samples_per_case, const std::vector<double>& ps,
                                   double delta, std::uint64_t seed) {
  Verdict v{"gradient-flow-exactness"};
  v.thresholds = {{"rel_error", 1e-5}, {"abs_floor", 1e-10}};
  const GridSpec spec(n, n, n);
  const int m = 2;
  const std::vector<TargetChart> charts = {TargetChart::flat_torus(m),
                                           TargetChart::sphere_stereographic(m),
                                           TargetChart::hyperbolic_ball(m)};
  SplitMix64 rng(seed);
  double worst = 0.0;
  for (const TargetChart& chart : charts) {
    MapState phi = smooth_random_map(spec, chart, rng);
    for (double p : ps) {
      const std::vector<Field> tau = tension_p(phi, p, delta);
      std::vector<GradientSample> samples;
      samples.reserve(samples_per_case);
      for (int s = 0; s < samples_per_case; ++s)
        samples.push_back({static_cast<int>(rng.below(spec.nx())),
                           static_cast<int>(rng.below(spec.ny())),
                           static_cast<int>(rng.below(spec.nt())),
                           static_cast<int>(rng.below(m))});
      const std::vector<double> fd = energy_gradient_fd(phi, p, delta, samples);
      for (std::size_t s = 0; s < samples.size(); ++s) {
        const GradientSample& gs = samples[s];
        const double t = tau[gs.component][spec.index(gs.i, gs.j, gs.k)];
        const double err = std::abs(fd[s] - t);
        if (err <= 1e-10) continue;
        worst = std::max(worst, err / std::max(std::abs(t), 1e-10));
      }
    }
  }
  v.measured = {{"worst_rel_error", worst}};
  v.pass = worst <= 1e-5;
  return v;
}

Verdict check_sasakian_commutator(int n, int fields, std::uint64_t seed) {
  Verdict v{"sasakian-commutator"};
  v.thresholds = {{"normalized_defect", 1e-12}};
  const GridSpec spec(n, n, n);
  SplitMix64 rng(seed);
  double worst = 0.0;
  for (int t = 0; t < fields; ++t) {
    const Field f = random_field(spec, rng);
    const Field a = sublaplacian(T_op(f, TScheme::centered));
    const Field b = T_op(sublaplacian(f), TScheme::centered);
    const double scale = std::max(max_abs(a) + max_abs(b), 1e-30);
    Field diff(spec);
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = a[i] - b[i];
    worst = std::max(worst, max_abs(diff) / scale);
  }
  v.measured = {{"worst_normalized_defect", worst}};
  v.pass = worst <= 1e-12;
  return v;
}

Verdict check_refinement_ladders(const std::vector<int>& levels) {
  Verdict v{"refinement-ladders"};
  v.thresholds = {{"min_order", 0.8}};
  const OperatorConvention conv = OperatorConvention::calibrated();
  std::vector<double> bochner_err, comm_err;
  for (int n : levels) {
    const GridSpec spec(n, n, n);
    const Field f = probe_field(spec);
    bochner_err.push_back(max_abs(bochner_residual(f, conv)));
    comm_err.push_back(max_abs(commutator_XY_defect(f)));
  }
  double min_order = 1e30;
  for (std::size_t r = 0; r + 1 < levels.size(); ++r) {
    const double ob = std::log2(bochner_err[r] / bochner_err[r + 1]);
    const double oc = std::log2(comm_err[r] / comm_err[r + 1]);
    v.measured.emplace_back("bochner_order_" + std::to_string(levels[r]), ob);
    v.measured.emplace_back("commutator_order_" + std::to_string(levels[r]), oc);
    min_order = std::min({min_order, ob, oc});
  }
  v.measured.emplace_back("j_sign", static_cast<double>(conv.j_sign));
  v.pass = min_order >= 0.8;
  return v;
}

Verdict check_christoffel_consistency(int samples, std::uint64_t seed) {
  Verdict v{"christoffel-consistency"};
  v.thresholds = {{"rel_error", 1e-5}, {"flat_error", 0.0}};
  const auto flat = christoffel_fd_check(TargetChart::flat_torus(2), samples, seed);
  const auto sph = christoffel_fd_check(TargetChart::sphere_stereographic(2), samples, seed + 1);
  const auto hyp = christoffel_fd_check(TargetChart::hyperbolic_ball(2), samples, seed + 2);
  v.measured = {{"flat", flat.max_rel_error}, {"sphere", sph.max_rel_error}, {"hyperbolic", hyp.max_rel_error}};
  v.pass = flat.max_rel_error == 0.0 && sph.max_rel_error <= 1e-5 && hyp.max_rel_error <= 1e-5;
  return v;
}

namespace {

bool rows_non_increasing(const FlowTrace& trace) {
  for (std::size_t r = 0; r + 1 < trace.rows.size(); ++r) {
    const double a = trace.rows[r].report.Ep_delta;
    const double b = trace.rows[r + 1].report.Ep_delta;
    if (b > a + 1e-12 * std::abs(a)) return false;
  }
  return true;
}

}  // namespace

Verdict experiment_energy_identity() {
  Verdict v{"energy-identity-dt-halving"};
  v.thresholds = {{"ratio_lo", 0.4}, {"ratio_hi", 0.6}};
  const GridSpec spec(16, 16, 16);
  const TargetChart chart = TargetChart::flat_torus(1);
  const MapState phi0 = random_map(spec, chart, 3.0, 0.2, 30, 5);

  auto defect_at = [&](double dt) {
    FlowParams fp;
    fp.p = 3.0;
    fp.delta = 1e-2;
    fp.dt0 = fp.dt_min = dt;
    fp.t_max = 0.02;
    fp.stop_tol = 1e-14;
    fp.record_every = 1000000;
    auto [final, trace] = run(phi0, fp);
    const double e0 = trace.rows.front().report.Ep_delta;
    const double eT = trace.rows.back().report.Ep_delta;
    return std::make_tuple(std::abs(e0 - eT - trace.dissipation_integral),
                           trace.rejected_steps, rows_non_increasing(trace));
  };

  const auto [d1, rej1, mono1] = defect_at(1e-4);
  const auto [d2, rej2, mono2] = defect_at(5e-5);
  const double ratio = d2 / d1;
  v.measured = {{"defect_dt", d1}, {"defect_half_dt", d2}, {"ratio", ratio},
                {"rejections", static_cast<double>(rej1 + rej2)}};
  v.pass = ratio >= 0.4 && ratio <= 0.6 && rej1 == 0 && rej2 == 0 && mono1 && mono2;
  return v;
}

Verdict experiment_linear_decay() {
  Verdict v{"linear-decay-oracle"};
  v.thresholds = {{"rel_error", 0.01}};
  const GridSpec spec(32, 32, 32);
  const TargetChart chart = TargetChart::flat_torus(1);
  const MapState phi0 = eigenmode_map(spec, chart, 0.1);

  FlowParams fp;
  fp.p = 2.0;
  fp.delta = 1e-2;
  fp.dt0 = fp.dt_min = 2e-4;
  fp.t_max = 0.05;
  fp.stop_tol = 1e-12;
  fp.record_every = 25;
  auto [final, trace] = run(phi0, fp);

  const double e0 = trace.rows.front().report.Ep;
  double worst = 0.0;
  for (const TraceRow& row : trace.rows) {
    const double expected = std::exp(-8.0 * std::numbers::pi * std::numbers::pi * row.time);
    const double measured = row.report.Ep / e0;
    worst = std::max(worst, std::abs(measured - expected) / expected);
  }
  v.measured = {{"worst_rel_error", worst},
                {"records", static_cast<double>(trace.rows.size())},
                {"rejections", static_cast<double>(trace.rejected_steps)}};
  v.pass = worst <= 0.01 && trace.termination == Termination::horizon &&
           trace.rejected_steps == 0 && rows_non_increasing(trace);
  return v;
}

Verdict experiment_nonpositive_curvature() {
  Verdict v{"nonpositive-curvature-convergence"};
  const double stop_tol = 1e-6;
  v.thresholds = {{"residual_max", 10.0 * stop_tol}, {"sup_grad_factor", 10.0},
                  {"initial_radius_max", 0.3}};
  const GridSpec spec(16, 16, 16);
  const TargetChart chart = TargetChart::hyperbolic_ball(2);
  const MapState phi0 = random_map(spec, chart, 3.0, 1e-2, 30, 3);
  const double radius0 = image_radius(phi0);

  FlowParams fp;
  fp.p = 3.0;
  fp.dt0 = 1e-3;
  fp.dt_min = 1e-9;
  fp.t_max = 100.0;
  fp.stop_tol = stop_tol;
  fp.record_every = 100;
  const ContinuationResult cont = delta_continuation(phi0, fp, {1e-1, 1e-2});

  bool pass = radius0 <= 0.3;
  v.measured = {{"initial_radius", radius0}};
  for (std::size_t r = 0; r < cont.deltas.size(); ++r) {
    const FlowTrace& trace = cont.traces[r];
    const double residual = harmonic_residual(cont.finals[r], fp.p, cont.deltas[r]);
    const double grad_factor = trace.max_sup_grad / std::max(trace.initial_sup_grad, 1e-30);
    const std::string tag = "d" + std::to_string(r);
    v.measured.emplace_back(tag + "_converged",
                            trace.termination == Termination::converged ? 1.0 : 0.0);
    v.measured.emplace_back(tag + "_residual", residual);
    v.measured.emplace_back(tag + "_sup_grad_factor", grad_factor);
    v.measured.emplace_back(tag + "_steps", static_cast<double>(trace.accepted_steps));
    pass = pass && trace.termination == Termination::converged &&
           residual <= 10.0 * stop_tol && grad_factor <= 10.0 && rows_non_increasing(trace);
  }
  v.pass = pass;
  return v;
}

Verdict experiment_small_energy_collapse() {
  Verdict v{"small-energy-constant-limit"};
  v.thresholds = {{"diameter_max", 1e-3}};
  const GridSpec spec(16, 16, 16);
  const TargetChart chart = TargetChart::sphere_stereographic(2);
  const MapState phi0 = random_map(spec, chart, 3.0, 1e-3, 30, 3);

  FlowParams fp;
  fp.p = 3.0;
  fp.delta = 1e-2;
  fp.dt0 = 1e-3;
  fp.dt_min = 1e-9;
  fp.t_max = 100.0;
  fp.stop_tol = 1e-6;
  fp.record_every = 100;
  auto [final1, trace1] = run(phi0, fp);
  const double diam1 = image_diameter(final1);

  fp.stop_tol = 1e-7;
  auto [final2, trace2] = run(phi0, fp);
  const double diam2 = image_diameter(final2);

  v.measured = {{"diameter", diam1}, {"diameter_tight", diam2},
                {"steps", static_cast<double>(trace1.accepted_steps)},
                {"steps_tight", static_cast<double>(trace2.accepted_steps)}};
  v.pass = trace1.termination == Termination::converged &&
           trace2.termination == Termination::converged && diam1 <= 1e-3 && diam2 < diam1 &&
           rows_non_increasing(trace1) && rows_non_increasing(trace2);
  return v;
}

Verdict experiment_sphere_large_energy() {
  Verdict v{"sphere-large-energy-outcome"};
  const GridSpec spec(16, 16, 16);
  const TargetChart chart = TargetChart::sphere_stereographic(2);
  MapState phi0 = random_map(spec, chart, 3.0, 2.0, 10, 9);

  FlowParams fp;
  fp.p = 3.0;
  fp.delta = 1e-2;
  fp.dt0 = 1e-3;
  fp.dt_min = 1e-10;
  fp.t_max = 0.2;
  fp.stop_tol = 1e-6;
  fp.record_every = 50;
  auto [final, trace] = run(phi0, fp);
  v.measured = {{"termination", static_cast<double>(trace.termination)},
                {"steps", static_cast<double>(trace.accepted_steps)},
                {"max_sup_grad", trace.max_sup_grad}};
  // exploratory: any termination is a recorded outcome; the dissipation
  // invariant must hold regardless
  v.pass = rows_non_increasing(trace);
  return v;
}

std::vector<Verdict> property_suite(int base_size) {
  std::vector<int> sbp_sizes = {8, 16};
  std::vector<int> ladder = {8, 16, 32};
  int grad_n = 16, samples = 50, commutator_fields = 10, christoffel_samples = 100;
  if (base_size <= 8) {
    sbp_sizes = {8};
    ladder = {8, 16};
    grad_n = 8;
    samples = 20;
    commutator_fields = 5;
    christoffel_samples = 20;
  }
  return {check_summation_by_parts(sbp_sizes),
          check_gradient_consistency(grad_n, samples),
          check_sasakian_commutator(grad_n, commutator_fields),
          check_refinement_ladders(ladder),
          check_christoffel_consistency(christoffel_samples)};
}

std::vector<Verdict> flow_experiments() {
  return {experiment_energy_identity(), experiment_linear_decay(),
          experiment_nonpositive_curvature(), experiment_small_energy_collapse(),
          experiment_sphere_large_energy()};
}

}  // namespace subflow
