#include <doctest.h>

#include <cmath>
#include <cstring>
#include <numbers>

#include "subflow/calculus.hpp"
#include "subflow/energy.hpp"
#include "subflow/probe.hpp"
#include "subflow/rng.hpp"

using namespace subflow;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Field random_field(const GridSpec& g, std::uint64_t seed) {
  SplitMix64 rng(seed);
  Field f(g);
  for (std::size_t n = 0; n < f.size(); ++n) f[n] = rng.symmetric();
  return f;
}

Field sine_x(const GridSpec& g, double amp = 1.0) {
  Field f(g);
  for (int i = 0; i < g.nx(); ++i) {
    const double v = amp * std::sin(kTwoPi * i * g.hx());
    for (int j = 0; j < g.ny(); ++j)
      for (int k = 0; k < g.nt(); ++k) f.at(i, j, k) = v;
  }
  return f;
}

}  // namespace

TEST_CASE("probe data is invariant under the quotient identification") {
  SplitMix64 rng(11);
  for (int s = 0; s < 50; ++s) {
    const double x = rng.uniform(), y = rng.uniform(), t = rng.uniform();
    CHECK(probe_value(x + 1.0, y, t + y) == doctest::Approx(probe_value(x, y, t)).epsilon(1e-12));
  }
}

TEST_CASE("one-sided differences") {
  const GridSpec g(8, 8, 8);

  SUBCASE("constants are annihilated") {
    const Field c(g, 3.25);
    for (Axis a : {Axis::x, Axis::y, Axis::t}) {
      CHECK(max_abs(d_plus(c, a)) == 0.0);
      CHECK(max_abs(d_minus(c, a)) == 0.0);
    }
  }

  SUBCASE("sawtooth in x: slope 1 except at the wrap seam") {
    Field f(g);
    for (int i = 0; i < g.nx(); ++i)
      for (int j = 0; j < g.ny(); ++j)
        for (int k = 0; k < g.nt(); ++k) f.at(i, j, k) = i * g.hx();
    const Field d = d_plus(f, Axis::x);
    for (int i = 0; i < g.nx(); ++i) {
      const double expected = (i < g.nx() - 1) ? 1.0 : 1.0 - 1.0 / g.hx();
      CHECK(d.at(i, 3, 5) == doctest::Approx(expected).epsilon(1e-13));
    }
  }

  SUBCASE("d_plus then d_minus along t is the 3-point second difference") {
    const Field f = random_field(g, 3);
    const Field dd = d_minus(d_plus(f, Axis::t), Axis::t);
    const double iht2 = 1.0 / (g.ht() * g.ht());
    double worst = 0.0;
    for (int i = 0; i < g.nx(); ++i)
      for (int j = 0; j < g.ny(); ++j)
        for (int k = 0; k < g.nt(); ++k) {
          const int kp = (k + 1) % g.nt(), km = (k + g.nt() - 1) % g.nt();
          const double direct = (f.at(i, j, kp) - 2.0 * f.at(i, j, k) + f.at(i, j, km)) * iht2;
          worst = std::max(worst, std::abs(dd.at(i, j, k) - direct));
        }
    CHECK(worst <= 1e-10 / (g.ht() * g.ht()));
  }
}

TEST_CASE("frame derivatives") {
  const GridSpec g(8, 8, 8);

  SUBCASE("x-only data has exactly zero Y derivative") {
    const Field f = sine_x(g);
    CHECK(max_abs(Y_op(f)) == 0.0);
  }

  SUBCASE("f = y gives Y_op = 1 away from the y wrap row") {
    Field f(g);
    for (int i = 0; i < g.nx(); ++i)
      for (int j = 0; j < g.ny(); ++j)
        for (int k = 0; k < g.nt(); ++k) f.at(i, j, k) = j * g.hy();
    const Field yf = Y_op(f);
    CHECK(yf.at(2, 3, 4) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(yf.at(2, g.ny() - 1, 4) == doctest::Approx(1.0 - 1.0 / g.hy()).epsilon(1e-13));
  }

  SUBCASE("constants annihilated by X, Y, T") {
    const Field c(g, -1.5);
    CHECK(max_abs(X_op(c)) == 0.0);
    CHECK(max_abs(Y_op(c)) == 0.0);
    CHECK(max_abs(T_op(c, TScheme::centered)) == 0.0);
    CHECK(max_abs(T_op(c, TScheme::forward)) == 0.0);
  }
}

TEST_CASE("grad_b") {
  const GridSpec g(16, 16, 16);
  const Field f = sine_x(g);
  const HorizontalVector w = grad_b(f);

  SUBCASE("Taylor oracle for the sine mode") {
    double worst = 0.0;
    for (int i = 0; i < g.nx(); ++i) {
      const double exact = kTwoPi * std::cos(kTwoPi * i * g.hx());
      worst = std::max(worst, std::abs(w.wx.at(i, 0, 0) - exact));
    }
    CHECK(worst <= 25.0 * g.hx());
    CHECK(max_abs(w.wy) == 0.0);
  }

  SUBCASE("linearity") {
    const Field a = random_field(g, 4), b = random_field(g, 5);
    Field combo(g);
    for (std::size_t n = 0; n < combo.size(); ++n) combo[n] = 2.0 * a[n] - 0.5 * b[n];
    const HorizontalVector wc = grad_b(combo);
    const HorizontalVector wa = grad_b(a), wb = grad_b(b);
    double worst = 0.0;
    for (std::size_t n = 0; n < combo.size(); ++n) {
      worst = std::max(worst, std::abs(wc.wx[n] - (2.0 * wa.wx[n] - 0.5 * wb.wx[n])));
      worst = std::max(worst, std::abs(wc.wy[n] - (2.0 * wa.wy[n] - 0.5 * wb.wy[n])));
    }
    CHECK(worst <= 1e-11);
  }
}

TEST_CASE("div_b is the exact negative adjoint of grad_b") {
  SplitMix64 rng(9);
  for (int n : {8, 16}) {
    const GridSpec g(n, n, n);
    for (int trial = 0; trial < 20; ++trial) {
      const Field f = random_field(g, rng.next());
      const HorizontalVector w(random_field(g, rng.next()), random_field(g, rng.next()));
      Field prod(g);
      const Field dw = div_b(w);
      for (std::size_t m = 0; m < prod.size(); ++m) prod[m] = f[m] * dw[m];
      const double lhs = integrate(prod);
      const HorizontalVector gf = grad_b(f);
      for (std::size_t m = 0; m < prod.size(); ++m)
        prod[m] = gf.wx[m] * w.wx[m] + gf.wy[m] * w.wy[m];
      const double rhs = integrate(prod);
      const double scale = max_abs(f) * std::max(max_abs(w.wx), max_abs(w.wy));
      CHECK(std::abs(lhs + rhs) <= 1e-12 * scale);
    }
  }
}

TEST_CASE("div_b of a constant horizontal vector vanishes") {
  const GridSpec g(8, 8, 8);
  const HorizontalVector w(Field(g, 1.0), Field(g, 0.0));
  CHECK(max_abs(div_b(w)) == 0.0);
}

TEST_CASE("sublaplacian") {
  const GridSpec g(16, 16, 16);

  SUBCASE("constant maps to zero") { CHECK(max_abs(sublaplacian(Field(g, 4.0))) == 0.0); }

  SUBCASE("sine mode is a discrete eigenfunction") {
    const Field f = sine_x(g);
    const Field lap = sublaplacian(f);
    const double s = std::sin(std::numbers::pi * g.hx());
    const double lam = 4.0 * s * s / (g.hx() * g.hx());
    double worst = 0.0;
    for (std::size_t n = 0; n < f.size(); ++n) worst = std::max(worst, std::abs(lap[n] + lam * f[n]));
    CHECK(worst <= 1e-9 * lam);
    CHECK(lam == doctest::Approx(4.0 * std::numbers::pi * std::numbers::pi).epsilon(0.02));
  }

  SUBCASE("self-adjoint and negative semidefinite") {
    const Field f = random_field(g, 21), h = random_field(g, 22);
    Field prod(g);
    const Field lf = sublaplacian(f), lh = sublaplacian(h);
    for (std::size_t n = 0; n < prod.size(); ++n) prod[n] = f[n] * lh[n];
    const double a = integrate(prod);
    for (std::size_t n = 0; n < prod.size(); ++n) prod[n] = h[n] * lf[n];
    const double b = integrate(prod);
    const double scale = max_abs(f) * max_abs(lh) + max_abs(h) * max_abs(lf);
    CHECK(std::abs(a - b) <= 1e-12 * scale);

    for (std::size_t n = 0; n < prod.size(); ++n) prod[n] = f[n] * lf[n];
    CHECK(integrate(prod) < 0.0);

    const Field c(g, 1.25);
    const Field lc = sublaplacian(c);
    for (std::size_t n = 0; n < prod.size(); ++n) prod[n] = c[n] * lc[n];
    CHECK(integrate(prod) == 0.0);
  }
}

TEST_CASE("j_rotate") {
  const GridSpec g(8, 8, 8);
  const OperatorConvention conv = OperatorConvention::calibrated();
  const HorizontalVector w(random_field(g, 31), random_field(g, 32));

  const HorizontalVector jw = j_rotate(w, conv);
  const HorizontalVector jjw = j_rotate(jw, conv);
  for (std::size_t n = 0; n < w.wx.size(); ++n) {
    CHECK(jjw.wx[n] == -w.wx[n]);
    CHECK(jjw.wy[n] == -w.wy[n]);
    CHECK(jw.wx[n] * w.wx[n] + jw.wy[n] * w.wy[n] == 0.0);  // rotation orthogonality
  }

  const HorizontalVector zero(g);
  const HorizontalVector jz = j_rotate(zero, conv);
  CHECK(max_abs(jz.wx) == 0.0);
  CHECK(max_abs(jz.wy) == 0.0);
}

TEST_CASE("[Delta_b, T] vanishes to rounding on random fields") {
  const GridSpec g(8, 8, 8);
  for (int trial = 0; trial < 10; ++trial) {
    const Field f = random_field(g, 100 + trial);
    const Field a = sublaplacian(T_op(f, TScheme::centered));
    const Field b = T_op(sublaplacian(f), TScheme::centered);
    const Field c = commutator_deltab_T(f);
    const double scale = max_abs(a) + max_abs(b);
    CHECK(max_abs(c) <= 1e-12 * scale);
  }
}

TEST_CASE("[X,Y] commutator") {
  SUBCASE("constants") {
    const GridSpec g(8, 8, 8);
    CHECK(max_abs(commutator_XY(Field(g, 2.0))) == 0.0);
  }

  SUBCASE("t-independent data commutes to rounding") {
    const GridSpec g(8, 8, 8);
    Field f(g);
    SplitMix64 rng(41);
    for (int i = 0; i < g.nx(); ++i)
      for (int j = 0; j < g.ny(); ++j) {
        const double v = rng.symmetric();
        for (int k = 0; k < g.nt(); ++k) f.at(i, j, k) = v;
      }
    const double scale = max_abs(commutator_XY(f)) + 1.0 / (g.hx() * g.hy());
    CHECK(max_abs(commutator_XY_defect(f)) <= 1e-11 * scale);
  }

  SUBCASE("converges to T under refinement") {
    double err8 = 0.0, err16 = 0.0;
    {
      const GridSpec g(8, 8, 8);
      err8 = max_abs(commutator_XY_defect(probe_field(g)));
    }
    {
      const GridSpec g(16, 16, 16);
      err16 = max_abs(commutator_XY_defect(probe_field(g)));
    }
    CHECK(std::log2(err8 / err16) >= 0.8);
  }
}

TEST_CASE("Bochner residual") {
  SUBCASE("constant gives exactly zero") {
    const GridSpec g(8, 8, 8);
    CHECK(max_abs(bochner_residual(Field(g, 1.0), OperatorConvention::calibrated())) == 0.0);
  }

  SUBCASE("J-term contributes nothing for t-independent data") {
    const GridSpec g(8, 8, 8);
    Field f(g);
    SplitMix64 rng(43);
    for (int i = 0; i < g.nx(); ++i)
      for (int j = 0; j < g.ny(); ++j) {
        const double v = rng.symmetric();
        for (int k = 0; k < g.nt(); ++k) f.at(i, j, k) = v;
      }
    const Field rm = bochner_residual(f, OperatorConvention{-1});
    const Field rp = bochner_residual(f, OperatorConvention{+1});
    double worst = 0.0;
    for (std::size_t n = 0; n < rm.size(); ++n) worst = std::max(worst, std::abs(rm[n] - rp[n]));
    CHECK(worst <= 1e-11 * (max_abs(rm) + 1.0));
  }

  SUBCASE("calibration picks the decaying orientation") {
    CHECK(calibrate_j_sign() == -1);
    CHECK(OperatorConvention::calibrated().j_sign == -1);

    auto rung_order = [](int sign) {
      double err[2];
      int level = 0;
      for (int n : {8, 16}) {
        const GridSpec g(n, n, n);
        err[level++] = max_abs(bochner_residual(probe_field(g), OperatorConvention{sign}));
      }
      return std::log2(err[0] / err[1]);
    };
    const double good = rung_order(-1), bad = rung_order(+1);
    CHECK(good >= 0.8);
    CHECK(good > bad + 0.5);
  }
}

TEST_CASE("p_sublaplacian") {
  const GridSpec g(8, 8, 8);

  SUBCASE("p=2 short-circuit is bit-exact") {
    MapState phi(g, TargetChart::flat_torus(1));
    phi.components[0] = random_field(g, 51);
    const Field a = p_sublaplacian(phi, 0, 2.0, 0.1);
    const Field b = p_sublaplacian(phi, 0, 2.0, 0.7);
    const Field c = sublaplacian(phi.components[0]);
    CHECK(std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0);
    CHECK(std::memcmp(a.data(), c.data(), a.size() * sizeof(double)) == 0);
  }

  SUBCASE("constant map maps to zero") {
    MapState phi(g, TargetChart::flat_torus(1));
    CHECK(max_abs(p_sublaplacian(phi, 0, 4.0, 0.5)) == 0.0);
  }

  SUBCASE("parameter validation") {
    MapState phi(g, TargetChart::flat_torus(1));
    CHECK_THROWS_AS(p_sublaplacian(phi, 0, 1.0, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(p_sublaplacian(phi, 0, 0.5, 0.1), std::invalid_argument);
    // degenerate weight: p < 2, delta = 0, vanishing gradient
    CHECK_THROWS_AS(p_sublaplacian(phi, 0, 1.5, 0.0), std::domain_error);
  }
}
