// Fixed band-limited analytic data compatible with the quotient
// identifications, used by the calibration and refinement ladders. The
// t-dependent part is a theta-type series: with G(x,y) = sum_r
// exp(-sigma (x-r)^2) exp(2 pi i r y) one has G(x+1,y) = exp(2 pi i y) G(x,y),
// so Re[exp(-2 pi i t) G(x,y)] satisfies f(x+1, y, t+y) = f(x, y, t).
#pragma once

#include "subflow/grid.hpp"

namespace subflow {

// Smooth quotient function evaluated at an arbitrary cover point.
double probe_value(double x, double y, double t);

// probe_value sampled at the lattice nodes.
Field probe_field(const GridSpec& spec);

}  // namespace subflow
