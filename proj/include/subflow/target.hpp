// Chart-based Riemannian targets. All built-in charts are conformally flat,
// g_ij(y) = lambda(y) * delta_ij, which gives closed-form Christoffel
// symbols and known curvature signs covering the flat, positive and
// nonpositive regimes.
#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace subflow {

enum class CurvatureSign { flat, positive, nonpositive };
enum class GuardStatus { ok, out_of_chart };

class ChartGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TargetChart {
 public:
  static TargetChart flat_torus(int m);
  static TargetChart sphere_stereographic(int m, double guard_radius = 4.0);
  static TargetChart hyperbolic_ball(int m, double margin = 0.05);

  int dim() const { return m_; }
  CurvatureSign curvature_sign() const { return sign_; }
  double guard_radius() const { return guard_radius_; }
  const std::string& name() const { return name_; }
  bool is_flat() const { return kind_ == Kind::flat; }

  GuardStatus guard(std::span<const double> y) const;
  bool in_guard(std::span<const double> y) const { return guard(y) == GuardStatus::ok; }

  // Conformal factor lambda with g = lambda * I, and sigma_i = d_i log sqrt(lambda).
  double conformal_factor(std::span<const double> y) const;
  void conformal_sigma(std::span<const double> y, double* sigma) const;

  // g_ij, row-major m*m
  void metric(std::span<const double> y, double* g) const;
  // g^{kl}, row-major m*m
  void metric_inverse(std::span<const double> y, double* ginv) const;
  // Gamma^k_ij at gam[(k*m + i)*m + j]; symmetric in (i,j)
  void christoffel(std::span<const double> y, double* gam) const;
  // d_l g_ij at dg[(l*m + i)*m + j], recovered from the Christoffels via
  // metric compatibility: d_l g_ij = g_mj Gamma^m_li + g_mi Gamma^m_lj.
  void metric_partials(std::span<const double> y, double* dg) const;

 private:
  enum class Kind { flat, sphere, hyperbolic };
  TargetChart(Kind k, int m, CurvatureSign s, double guard_radius, std::string name);

  Kind kind_;
  int m_;
  CurvatureSign sign_;
  double guard_radius_;
  std::string name_;
};

struct ChristoffelCheckReport {
  double max_rel_error = 0.0;
  int samples = 0;
};

// Compares christoffel() against the Levi-Civita formula applied to the
// finite-differenced metric at random in-guard points.
ChristoffelCheckReport christoffel_fd_check(const TargetChart& chart, int sample_count,
                                            std::uint64_t seed = 12345);

}  // namespace subflow
