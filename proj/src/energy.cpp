#include "subflow/energy.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace subflow {

namespace {

void validate_p_delta(double p, double delta) {
  if (!(p > 1.0)) throw std::invalid_argument("p must be > 1");
  if (delta < 0.0) throw std::invalid_argument("delta must be >= 0");
}

// |grad_b phi|^2_g at every node; throws if any node leaves the chart.
Field grad_norm2_g(const MapState& phi, const std::vector<Field>& dx,
                   const std::vector<Field>& dy) {
  const GridSpec& spec = phi.spec();
  const TargetChart& chart = phi.chart;
  const int m = phi.dim();
  Field out(spec);
  std::vector<double> y(m), g(m * m);
  for (std::size_t n = 0; n < spec.size(); ++n) {
    phi.node_value(n, y.data());
    if (!chart.in_guard(y)) throw ChartGuardError("map left the chart at node " + std::to_string(n));
    chart.metric(y, g.data());
    double s = 0.0;
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        s += g[a * m + b] * (dx[a][n] * dx[b][n] + dy[a][n] * dy[b][n]);
    out[n] = s;
  }
  return out;
}

std::vector<Field> frame_derivatives(const MapState& phi, Axis which) {
  std::vector<Field> out;
  out.reserve(phi.dim());
  for (const Field& c : phi.components)
    out.push_back(which == Axis::x ? X_op(c) : Y_op(c));
  return out;
}

}  // namespace

DensityBundle densities(const MapState& phi, double delta, double epsilon) {
  if (delta < 0.0) throw std::invalid_argument("delta must be >= 0");
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
  const GridSpec& spec = phi.spec();
  const int m = phi.dim();

  const std::vector<Field> dx = frame_derivatives(phi, Axis::x);
  const std::vector<Field> dy = frame_derivatives(phi, Axis::y);
  const Field grad2 = grad_norm2_g(phi, dx, dy);

  std::vector<Field> dt;
  dt.reserve(m);
  for (const Field& c : phi.components) dt.push_back(T_op(c, TScheme::centered));

  DensityBundle out{Field(spec), Field(spec), Field(spec), Field(spec), epsilon};
  std::vector<double> y(m), g(m * m);
  for (std::size_t n = 0; n < spec.size(); ++n) {
    phi.node_value(n, y.data());
    phi.chart.metric(y, g.data());
    double e0 = 0.0;
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) e0 += g[a * m + b] * dt[a][n] * dt[b][n];
    out.e[n] = 0.5 * grad2[n];
    out.f_delta[n] = grad2[n] + delta;
    out.e0[n] = e0;
    out.g_total[n] = out.f_delta[n] + epsilon * e0;
  }
  return out;
}

double Ep(const MapState& phi, double p) { return Ep_delta(phi, p, 0.0); }

double Ep_delta(const MapState& phi, double p, double delta) {
  validate_p_delta(p, delta);
  const std::vector<Field> dx = frame_derivatives(phi, Axis::x);
  const std::vector<Field> dy = frame_derivatives(phi, Axis::y);
  Field f = grad_norm2_g(phi, dx, dy);
  const double half_p = 0.5 * p;
  for (std::size_t n = 0; n < f.size(); ++n) f[n] = std::pow(f[n] + delta, half_p);
  return integrate(f) / p;
}

EnergyReport energy_report(const MapState& phi, double p, double delta, double epsilon) {
  const DensityBundle d = densities(phi, delta, epsilon);
  EnergyReport r;
  const double half_p = 0.5 * p;
  Field fp(phi.spec());
  Field fpd(phi.spec());
  double max_g2 = 0.0, max_e0 = 0.0;
  for (std::size_t n = 0; n < fp.size(); ++n) {
    const double g2 = d.f_delta[n] - delta;
    fp[n] = std::pow(g2, half_p);
    fpd[n] = std::pow(d.f_delta[n], half_p);
    max_g2 = std::max(max_g2, g2);
    max_e0 = std::max(max_e0, d.e0[n]);
  }
  r.Ep = integrate(fp) / p;
  r.Ep_delta = integrate(fpd) / p;
  r.sup_grad = std::sqrt(std::max(max_g2, 0.0));
  r.sup_T = std::sqrt(max_e0);
  Field gsq(phi.spec());
  for (std::size_t n = 0; n < gsq.size(); ++n) gsq[n] = d.g_total[n] * d.g_total[n];
  r.Ln1_g = std::sqrt(integrate(gsq));
  return r;
}

TensionResult tension_eval(const MapState& phi, double p, double delta) {
  validate_p_delta(p, delta);
  if (p < 2.0 && delta == 0.0)
    throw std::domain_error("degenerate weight: p < 2 requires delta > 0");

  const GridSpec& spec = phi.spec();
  const TargetChart& chart = phi.chart;
  const int m = phi.dim();
  const bool unit_weight = (p == 2.0);
  const double wexp = 0.5 * (p - 2.0);

  const std::vector<Field> dx = frame_derivatives(phi, Axis::x);
  const std::vector<Field> dy = frame_derivatives(phi, Axis::y);

  // pass 1: weighted metric flux W_l = w g_lj grad_b phi^j and the reaction
  // part -1/2 w d_l g_ij S^ij, all sampled at nodes
  std::vector<HorizontalVector> flux(m, HorizontalVector(spec));
  std::vector<Field> reaction(m, Field(spec));
  std::vector<double> y(m), g(m * m), dg(m * m * m);
  double max_grad2 = 0.0;
  for (std::size_t n = 0; n < spec.size(); ++n) {
    phi.node_value(n, y.data());
    if (!chart.in_guard(y)) throw ChartGuardError("map left the chart at node " + std::to_string(n));
    chart.metric(y, g.data());
    double grad2 = 0.0;
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        grad2 += g[a * m + b] * (dx[a][n] * dx[b][n] + dy[a][n] * dy[b][n]);
    max_grad2 = std::max(max_grad2, grad2);
    const double w = unit_weight ? 1.0 : std::pow(grad2 + delta, wexp);
    for (int l = 0; l < m; ++l) {
      double fx = 0.0, fy = 0.0;
      for (int b = 0; b < m; ++b) {
        fx += g[l * m + b] * dx[b][n];
        fy += g[l * m + b] * dy[b][n];
      }
      flux[l].wx[n] = w * fx;
      flux[l].wy[n] = w * fy;
    }
    if (!chart.is_flat()) {
      chart.metric_partials(y, dg.data());
      for (int l = 0; l < m; ++l) {
        double s = 0.0;
        for (int a = 0; a < m; ++a)
          for (int b = 0; b < m; ++b)
            s += dg[(l * m + a) * m + b] * (dx[a][n] * dx[b][n] + dy[a][n] * dy[b][n]);
        reaction[l][n] = -0.5 * w * s;
      }
    }
  }

  // pass 2: divergence of each flux
  std::vector<Field> divw;
  divw.reserve(m);
  for (int l = 0; l < m; ++l) divw.push_back(div_b(flux[l]));

  // pass 3: contract with the inverse metric
  TensionResult out{std::vector<Field>(m, Field(spec)), max_grad2};
  std::vector<double> ginv(m * m);
  for (std::size_t n = 0; n < spec.size(); ++n) {
    phi.node_value(n, y.data());
    chart.metric_inverse(y, ginv.data());
    for (int k = 0; k < m; ++k) {
      double v = 0.0;
      for (int l = 0; l < m; ++l) v += ginv[k * m + l] * (divw[l][n] + reaction[l][n]);
      out.tau[k][n] = v;
    }
  }
  return out;
}

std::vector<Field> tension_p(const MapState& phi, double p, double delta) {
  return tension_eval(phi, p, delta).tau;
}

Field p_sublaplacian(const MapState& phi, int component, double p, double delta) {
  validate_p_delta(p, delta);
  if (component < 0 || component >= phi.dim())
    throw std::invalid_argument("p_sublaplacian: component out of range");
  if (p == 2.0) return sublaplacian(phi.components[component]);
  const std::vector<Field> dx = frame_derivatives(phi, Axis::x);
  const std::vector<Field> dy = frame_derivatives(phi, Axis::y);
  Field f = grad_norm2_g(phi, dx, dy);
  if (p < 2.0 && delta == 0.0) {
    for (std::size_t n = 0; n < f.size(); ++n)
      if (f[n] == 0.0) throw std::domain_error("degenerate weight: |grad_b phi| vanishes with delta = 0, p < 2");
  }
  const double wexp = 0.5 * (p - 2.0);
  HorizontalVector flux(phi.spec());
  for (std::size_t n = 0; n < f.size(); ++n) {
    const double w = std::pow(f[n] + delta, wexp);
    flux.wx[n] = w * dx[component][n];
    flux.wy[n] = w * dy[component][n];
  }
  return div_b(flux);
}

double g_weighted_l2(const MapState& phi, const std::vector<Field>& v) {
  if (static_cast<int>(v.size()) != phi.dim())
    throw std::invalid_argument("g_weighted_l2: component count mismatch");
  const int m = phi.dim();
  Field q(phi.spec());
  std::vector<double> y(m), g(m * m);
  for (std::size_t n = 0; n < q.size(); ++n) {
    phi.node_value(n, y.data());
    phi.chart.metric(y, g.data());
    double s = 0.0;
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) s += g[a * m + b] * v[a][n] * v[b][n];
    q[n] = s;
  }
  return std::sqrt(integrate(q));
}

std::vector<double> energy_gradient_fd(MapState& phi, double p, double delta,
                                       const std::vector<GradientSample>& samples,
                                       double fd_step) {
  if (samples.empty()) throw std::invalid_argument("energy_gradient_fd: empty sample set");
  const GridSpec& spec = phi.spec();
  const int m = phi.dim();
  const double vol = spec.cell_volume();
  std::vector<double> y(m), ginv(m * m), partial(m), out;
  out.reserve(samples.size());
  for (const GradientSample& s : samples) {
    const std::size_t n = spec.index(s.i, s.j, s.k);
    for (int l = 0; l < m; ++l) {
      Field& comp = phi.components[l];
      const double saved = comp[n];
      comp[n] = saved + fd_step;
      const double ep = Ep_delta(phi, p, delta);
      comp[n] = saved - fd_step;
      const double em = Ep_delta(phi, p, delta);
      comp[n] = saved;
      partial[l] = (ep - em) / (2.0 * fd_step);
    }
    phi.node_value(n, y.data());
    phi.chart.metric_inverse(y, ginv.data());
    double v = 0.0;
    for (int l = 0; l < m; ++l) v += ginv[s.component * m + l] * partial[l];
    out.push_back(-v / vol);
  }
  return out;
}

}  // namespace subflow
