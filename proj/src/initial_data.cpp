#include "subflow/initial_data.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "subflow/calculus.hpp"
#include "subflow/energy.hpp"
#include "subflow/rng.hpp"

namespace subflow {

MapState constant_map(const GridSpec& spec, const TargetChart& chart) {
  return MapState(spec, chart);  // all components zero: the chart origin
}

MapState eigenmode_map(const GridSpec& spec, const TargetChart& chart, double amplitude) {
  MapState phi(spec, chart);
  Field& c0 = phi.components.front();
  const double two_pi = 2.0 * std::numbers::pi;
  for (int i = 0; i < spec.nx(); ++i) {
    const double v = amplitude * std::sin(two_pi * i * spec.hx());
    for (int j = 0; j < spec.ny(); ++j)
      for (int k = 0; k < spec.nt(); ++k) c0.at(i, j, k) = v;
  }
  if (!phi.in_guard()) throw ChartGuardError("eigenmode amplitude leaves the chart");
  return phi;
}

namespace {

// scale about the per-component mean: phi_s = mean + s (phi - mean)
MapState scaled_about_mean(const MapState& phi, const std::vector<double>& mean, double s) {
  MapState out = phi;
  for (int c = 0; c < phi.dim(); ++c)
    for (std::size_t n = 0; n < out.components[c].size(); ++n)
      out.components[c][n] = mean[c] + s * (phi.components[c][n] - mean[c]);
  return out;
}

}  // namespace

MapState random_map(const GridSpec& spec, const TargetChart& chart, double p,
                    double target_energy, int mollify_steps, std::uint64_t seed) {
  if (!(target_energy > 0.0)) throw std::invalid_argument("random_map: target energy must be > 0");
  const int m = chart.dim();
  MapState phi(spec, chart);
  SplitMix64 rng(seed);
  for (int c = 0; c < m; ++c)
    for (std::size_t n = 0; n < spec.size(); ++n) phi.components[c][n] = rng.symmetric();

  // explicit p=2 flat sub-heat steps; stable step for the 3-point stencils
  const double hmin = std::min({spec.hx(), spec.hy(), spec.ht()});
  const double dt = hmin * hmin / 12.0;
  for (int s = 0; s < mollify_steps; ++s)
    for (int c = 0; c < m; ++c) {
      const Field lap = sublaplacian(phi.components[c]);
      Field& f = phi.components[c];
      for (std::size_t n = 0; n < f.size(); ++n) f[n] += dt * lap[n];
    }

  std::vector<double> mean(m, 0.0);
  for (int c = 0; c < m; ++c)
    mean[c] = deterministic_sum(phi.components[c].values()) / static_cast<double>(spec.size());

  auto energy_at = [&](double s) -> double {
    MapState cand = scaled_about_mean(phi, mean, s);
    if (!cand.in_guard()) return -1.0;  // out of chart
    return Ep(cand, p);
  };

  // bracket then bisect on the amplitude; Ep is continuous and increasing
  // in s while the image stays within the conformal charts' monotone range.
  // Out-of-guard states count as "too big" so the bracket shrinks back
  // inside the chart before growing toward the target.
  double lo = 0.0, hi = 1.0;
  double e_hi = energy_at(hi);
  for (int it = 0; e_hi < 0.0 && it < 60; ++it) {
    hi *= 0.5;
    e_hi = energy_at(hi);
  }
  for (int it = 0; e_hi >= 0.0 && e_hi < target_energy && it < 60; ++it) {
    lo = hi;
    hi *= 2.0;
    e_hi = energy_at(hi);
  }
  if (e_hi >= 0.0 && e_hi < target_energy)
    throw std::runtime_error("random_map: target energy unreachable within the chart guard");
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double e = energy_at(mid);
    if (e < 0.0 || e > target_energy)
      hi = mid;
    else
      lo = mid;
    if (e >= 0.0 && std::abs(e - target_energy) <= 1e-4 * target_energy) {
      lo = hi = mid;
      break;
    }
  }
  const double s = 0.5 * (lo + hi);
  MapState out = scaled_about_mean(phi, mean, s);
  const double e = Ep(out, p);
  if (std::abs(e - target_energy) > 1e-3 * target_energy)
    throw std::runtime_error("random_map: bisection failed to reach the target energy");
  return out;
}

MapState generate_initial(const RunConfig& cfg) {
  const GridSpec spec = cfg.make_grid();
  const TargetChart chart = cfg.make_chart();
  if (cfg.init_kind == "constant") return constant_map(spec, chart);
  if (cfg.init_kind == "eigenmode") return eigenmode_map(spec, chart, cfg.init_amplitude);
  if (cfg.init_kind == "random")
    return random_map(spec, chart, cfg.p, cfg.target_energy, cfg.mollify_steps, cfg.seed);
  throw std::invalid_argument("unknown init_kind '" + cfg.init_kind + "' (constant|eigenmode|random)");
}

}  // namespace subflow
