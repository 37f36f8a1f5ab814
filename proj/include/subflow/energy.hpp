// The p-energy, its delta-regularization, the monitored density hierarchy,
// and the flow right-hand side.
//
// The discrete energy is the node quadrature
//   E_{p,delta}(phi) = (1/p) sum_n (f_delta(n))^{p/2} * V,
//   f_delta = g_ij(phi) (X phi^i X phi^j + Y phi^i Y phi^j) + delta,
// and tension_p is its exact negative g-weighted gradient in closed form:
//   tau^k = g^{kl} div_b( w g_lj grad_b phi^j ) - 1/2 w g^{kl} d_l g_ij S^ij,
//   w = f_delta^{(p-2)/2},  S^ij = <grad_b phi^i, grad_b phi^j>.
// Exactness (not just consistency) is what makes the discrete energy
// identity hold along the flow; it is checked against the finite-difference
// gradient oracle below.
#pragma once

#include <vector>

#include "subflow/calculus.hpp"
#include "subflow/map_state.hpp"

namespace subflow {

struct DensityBundle {
  Field e;        // 1/2 |grad_b phi|^2_g
  Field f_delta;  // |grad_b phi|^2_g + delta
  Field e0;       // g_ij T phi^i T phi^j  (centered T)
  Field g_total;  // f_delta + epsilon * e0
  double epsilon;
};

struct EnergyReport {
  double Ep = 0.0;
  double Ep_delta = 0.0;
  double sup_grad = 0.0;  // Linf of |grad_b phi|_g
  double sup_T = 0.0;     // Linf of |T phi|_g
  double Ln1_g = 0.0;     // L^2 norm of g_total (n+1 = 2 on the model)
};

DensityBundle densities(const MapState& phi, double delta, double epsilon);

double Ep(const MapState& phi, double p);
double Ep_delta(const MapState& phi, double p, double delta);

EnergyReport energy_report(const MapState& phi, double p, double delta, double epsilon);

// Flow right-hand side; one Field per component. p=2 short-circuits the
// weight to exactly 1, making the result delta-independent bit-for-bit and
// equal to the plain sublaplacian on flat targets.
std::vector<Field> tension_p(const MapState& phi, double p, double delta);

// Same evaluation, also reporting max_n |grad_b phi|^2_g (used by the flow
// loop to track the gradient sup without an extra pass).
struct TensionResult {
  std::vector<Field> tau;
  double max_grad2 = 0.0;
};
TensionResult tension_eval(const MapState& phi, double p, double delta);

// Single-component weighted operator div_b( f_delta^{(p-2)/2} grad_b phi^k ).
// The weight is sampled at nodes and each forward arm carries its base
// node's weight, which is the exact-gradient convention on flat targets.
Field p_sublaplacian(const MapState& phi, int component, double p, double delta);

// g-weighted L2 norm sqrt( integrate( g_ij(phi) v^i v^j ) ).
double g_weighted_l2(const MapState& phi, const std::vector<Field>& v);

// Independent oracle: central finite differences of Ep_delta under nodal
// perturbations, mapped to the flow's vector form with -g^{kl}/cell_volume.
struct GradientSample {
  int i = 0, j = 0, k = 0;
  int component = 0;
};
std::vector<double> energy_gradient_fd(MapState& phi, double p, double delta,
                                       const std::vector<GradientSample>& samples,
                                       double fd_step = 1e-6);

}  // namespace subflow
