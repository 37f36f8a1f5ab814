// Discrete calculus for the horizontal frame X = d/dx, Y = d/dy + x d/dt,
// T = d/dt on the twisted-periodic lattice.
//
// Two families of operators with different contracts:
//  - flow operators (grad_b forward, div_b backward) satisfy exact
//    summation by parts under integrate(), which the gradient-flow
//    machinery depends on;
//  - diagnostic operators (commutators, Bochner residual) use centered
//    differences and evaluate composed stencils with the x-coefficient
//    continued on the covering branch of the base node, which keeps the
//    residuals consistent across the wrap seam.
#pragma once

#include "subflow/grid.hpp"

namespace subflow {

enum class TScheme { centered, forward };

// JX = j_sign * Y. The sign does not transfer uniquely from the continuum
// conventions to the polarized chart; it is fixed per build by the Bochner
// refinement calibration and recorded in run metadata.
struct OperatorConvention {
  int j_sign = -1;
  // scheme labels (fixed for this build): gradient forward, divergence
  // backward adjoint, diagnostics centered.
  static OperatorConvention calibrated();  // runs the calibration once, cached
};

// One-sided differences with the twisted wrap.
Field d_plus(const Field& f, Axis axis);
Field d_minus(const Field& f, Axis axis);

// Frame derivatives. X, Y are the forward (flow) versions.
Field X_op(const Field& f);
Field Y_op(const Field& f);
Field T_op(const Field& f, TScheme scheme = TScheme::centered);

HorizontalVector grad_b(const Field& f);
// Exact negative adjoint of grad_b under integrate().
Field div_b(const HorizontalVector& w);
Field sublaplacian(const Field& f);

HorizontalVector j_rotate(const HorizontalVector& w, const OperatorConvention& conv);

// Pointwise squared norm |W|^2 = wx^2 + wy^2.
Field squared_norm(const HorizontalVector& w);

// [Delta_b, T] f; identically zero (to rounding) on this model.
Field commutator_deltab_T(const Field& f);

// X(Yf) - Y(Xf) - T f with forward frame derivatives composed on the
// covering branch; O(h) for smooth quotient data.
Field commutator_XY_defect(const Field& f, TScheme t_scheme = TScheme::centered);
// X(Yf) - Y(Xf) alone.
Field commutator_XY(const Field& f);

// CR Bochner residual with centered cover-branch stencils:
//   r = 1/2 Delta_b |grad_b f|^2 - |Hess_H f|^2
//       - <grad_b f, grad_b Delta_b f> - 2 <J grad_b f, grad_b Tf>.
// Curvature and torsion terms vanish on this model. O(h^2) for smooth
// quotient data when conv carries the calibrated sign.
Field bochner_residual(const Field& f, const OperatorConvention& conv);

// Calibration: runs the Bochner refinement ladder with both signs on fixed
// analytic data and returns the sign whose residual decays.
int calibrate_j_sign();

}  // namespace subflow
