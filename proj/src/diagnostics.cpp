#include "subflow/diagnostics.hpp"

#include <cmath>
#include <sstream>

namespace subflow {

double lq_norm(const Field& f, double q) {
  if (!(q >= 1.0)) throw std::invalid_argument("lq_norm: q must be >= 1");
  Field g(f.spec());
  for (std::size_t n = 0; n < f.size(); ++n) g[n] = std::pow(std::abs(f[n]), q);
  return std::pow(integrate(g), 1.0 / q);
}

double linf_norm(const Field& f) { return max_abs(f); }

double harmonic_residual(const MapState& phi, double p, double delta) {
  return g_weighted_l2(phi, tension_p(phi, p, delta));
}

double image_diameter(const MapState& phi) {
  const int m = phi.dim();
  const std::size_t n = phi.spec().size();
  double best = 0.0;
  for (std::size_t a = 0; a + 1 < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      double d2 = 0.0;
      for (int c = 0; c < m; ++c) {
        const double d = phi.components[c][a] - phi.components[c][b];
        d2 += d * d;
      }
      best = std::max(best, d2);
    }
  return std::sqrt(best);
}

double image_radius(const MapState& phi) {
  const int m = phi.dim();
  double best = 0.0;
  for (std::size_t n = 0; n < phi.spec().size(); ++n) {
    double r2 = 0.0;
    for (int c = 0; c < m; ++c) r2 += phi.components[c][n] * phi.components[c][n];
    best = std::max(best, r2);
  }
  return std::sqrt(best);
}

std::string format_verdict(const Verdict& v) {
  std::ostringstream os;
  os << (v.pass ? "[PASS] " : "[FAIL] ") << v.name;
  if (!v.measured.empty()) {
    os << "  (";
    for (std::size_t i = 0; i < v.measured.size(); ++i) {
      if (i) os << ", ";
      os << v.measured[i].first << "=" << v.measured[i].second;
    }
    os << ")";
  }
  return os.str();
}

}  // namespace subflow
