// Norms, residuals and experiment verdicts on maps and flow traces.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "subflow/energy.hpp"
#include "subflow/flow.hpp"

namespace subflow {

double lq_norm(const Field& f, double q);
double linf_norm(const Field& f);

// g-weighted L2 norm of the tension field: distance from being a weakly
// p-pseudoharmonic map.
double harmonic_residual(const MapState& phi, double p, double delta);

// max over node pairs of the Euclidean chart-coordinate distance.
double image_diameter(const MapState& phi);

// max over nodes of the Euclidean chart-coordinate norm (distance from the
// chart origin); used to check the small-image hypotheses.
double image_radius(const MapState& phi);

struct Verdict {
  std::string name;
  bool pass = false;
  std::vector<std::pair<std::string, double>> measured;
  std::vector<std::pair<std::string, double>> thresholds;
};

std::string format_verdict(const Verdict& v);

}  // namespace subflow
