#include "subflow/target.hpp"

#include <cmath>
#include <cstdint>

#include "subflow/rng.hpp"

namespace subflow {

namespace {
double norm2(std::span<const double> y) {
  double r2 = 0.0;
  for (double v : y) r2 += v * v;
  return r2;
}
}  // namespace

TargetChart::TargetChart(Kind k, int m, CurvatureSign s, double guard_radius, std::string name)
    : kind_(k), m_(m), sign_(s), guard_radius_(guard_radius), name_(std::move(name)) {
  if (m < 1) throw std::invalid_argument("TargetChart: dimension must be >= 1");
}

TargetChart TargetChart::flat_torus(int m) {
  return TargetChart(Kind::flat, m, CurvatureSign::flat, 0.0, "flat");
}

TargetChart TargetChart::sphere_stereographic(int m, double guard_radius) {
  return TargetChart(Kind::sphere, m, CurvatureSign::positive, guard_radius, "sphere");
}

TargetChart TargetChart::hyperbolic_ball(int m, double margin) {
  if (margin <= 0.0 || margin >= 1.0) throw std::invalid_argument("hyperbolic_ball: margin in (0,1)");
  return TargetChart(Kind::hyperbolic, m, CurvatureSign::nonpositive, 1.0 - margin, "hyperbolic");
}

GuardStatus TargetChart::guard(std::span<const double> y) const {
  if (kind_ == Kind::flat) return GuardStatus::ok;
  return norm2(y) <= guard_radius_ * guard_radius_ ? GuardStatus::ok : GuardStatus::out_of_chart;
}

double TargetChart::conformal_factor(std::span<const double> y) const {
  switch (kind_) {
    case Kind::flat: return 1.0;
    case Kind::sphere: {
      const double d = 1.0 + norm2(y);
      return 4.0 / (d * d);
    }
    case Kind::hyperbolic: {
      const double d = 1.0 - norm2(y);
      return 4.0 / (d * d);
    }
  }
  return 1.0;
}

void TargetChart::conformal_sigma(std::span<const double> y, double* sigma) const {
  switch (kind_) {
    case Kind::flat:
      for (int i = 0; i < m_; ++i) sigma[i] = 0.0;
      return;
    case Kind::sphere: {
      const double d = 1.0 + norm2(y);
      for (int i = 0; i < m_; ++i) sigma[i] = -2.0 * y[i] / d;
      return;
    }
    case Kind::hyperbolic: {
      const double d = 1.0 - norm2(y);
      for (int i = 0; i < m_; ++i) sigma[i] = 2.0 * y[i] / d;
      return;
    }
  }
}

void TargetChart::metric(std::span<const double> y, double* g) const {
  const double lam = conformal_factor(y);
  for (int i = 0; i < m_; ++i)
    for (int j = 0; j < m_; ++j) g[i * m_ + j] = (i == j) ? lam : 0.0;
}

void TargetChart::metric_inverse(std::span<const double> y, double* ginv) const {
  const double inv = 1.0 / conformal_factor(y);
  for (int i = 0; i < m_; ++i)
    for (int j = 0; j < m_; ++j) ginv[i * m_ + j] = (i == j) ? inv : 0.0;
}

void TargetChart::christoffel(std::span<const double> y, double* gam) const {
  std::vector<double> sigma(m_);
  conformal_sigma(y, sigma.data());
  for (int k = 0; k < m_; ++k)
    for (int i = 0; i < m_; ++i)
      for (int j = 0; j < m_; ++j) {
        double v = 0.0;
        if (j == k) v += sigma[i];
        if (i == k) v += sigma[j];
        if (i == j) v -= sigma[k];
        gam[(k * m_ + i) * m_ + j] = v;
      }
}

void TargetChart::metric_partials(std::span<const double> y, double* dg) const {
  const double lam = conformal_factor(y);
  std::vector<double> sigma(m_);
  conformal_sigma(y, sigma.data());
  for (int l = 0; l < m_; ++l)
    for (int i = 0; i < m_; ++i)
      for (int j = 0; j < m_; ++j)
        dg[(l * m_ + i) * m_ + j] = (i == j) ? 2.0 * sigma[l] * lam : 0.0;
}

ChristoffelCheckReport christoffel_fd_check(const TargetChart& chart, int sample_count,
                                            std::uint64_t seed) {
  const int m = chart.dim();
  SplitMix64 rng(seed);
  // sample radius: stay away from the guard edge so FD stencils remain in-chart
  const double radius = chart.is_flat() ? 1.0 : 0.8 * chart.guard_radius();
  const double step = 1e-5;

  std::vector<double> y(m), gam(m * m * m), gam_fd(m * m * m);
  std::vector<double> gp(m * m), gm(m * m), ginv(m * m);
  std::vector<std::vector<double>> dg(m, std::vector<double>(m * m));

  ChristoffelCheckReport rep;
  rep.samples = sample_count;
  for (int s = 0; s < sample_count; ++s) {
    // uniform in the cube scaled to the sampling radius, rejected to the ball
    double r2;
    do {
      r2 = 0.0;
      for (int i = 0; i < m; ++i) {
        y[i] = radius * (2.0 * rng.uniform() - 1.0);
        r2 += y[i] * y[i];
      }
    } while (r2 > radius * radius);

    for (int l = 0; l < m; ++l) {
      const double y0 = y[l];
      y[l] = y0 + step;
      chart.metric(y, gp.data());
      y[l] = y0 - step;
      chart.metric(y, gm.data());
      y[l] = y0;
      for (int e = 0; e < m * m; ++e) dg[l][e] = (gp[e] - gm[e]) / (2.0 * step);
    }
    chart.metric_inverse(y, ginv.data());
    for (int k = 0; k < m; ++k)
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
          double v = 0.0;
          for (int l = 0; l < m; ++l)
            v += 0.5 * ginv[k * m + l] *
                 (dg[i][j * m + l] + dg[j][i * m + l] - dg[l][i * m + j]);
          gam_fd[(k * m + i) * m + j] = v;
        }
    chart.christoffel(y, gam.data());

    double scale = 0.0, diff = 0.0;
    for (int e = 0; e < m * m * m; ++e) {
      scale = std::max(scale, std::abs(gam[e]));
      diff = std::max(diff, std::abs(gam[e] - gam_fd[e]));
    }
    rep.max_rel_error = std::max(rep.max_rel_error, diff / std::max(scale, 1e-6));
  }
  return rep;
}

}  // namespace subflow
