#include "subflow/probe.hpp"

#include <cmath>
#include <numbers>

namespace subflow {

namespace {
constexpr double kSigma = 4.0;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}  // namespace

double probe_value(double x, double y, double t) {
  // theta series, truncated where the Gaussian tail is below rounding
  double re = 0.0, im = 0.0;
  const int r0 = static_cast<int>(std::floor(x));
  for (int r = r0 - 7; r <= r0 + 8; ++r) {
    const double u = x - r;
    const double a = std::exp(-kSigma * u * u);
    re += a * std::cos(kTwoPi * r * y);
    im += a * std::sin(kTwoPi * r * y);
  }
  const double ct = std::cos(kTwoPi * t), st = std::sin(kTwoPi * t);
  // Re[exp(-2 pi i t) (re + i im)]
  double v = ct * re + st * im;
  v += 0.5 * std::sin(kTwoPi * x) * std::cos(kTwoPi * y);
  return v;
}

Field probe_field(const GridSpec& spec) {
  Field f(spec);
  std::size_t n = 0;
  for (int i = 0; i < spec.nx(); ++i)
    for (int j = 0; j < spec.ny(); ++j)
      for (int k = 0; k < spec.nt(); ++k, ++n)
        f[n] = probe_value(i * spec.hx(), j * spec.hy(), k * spec.ht());
  return f;
}

}  // namespace subflow
