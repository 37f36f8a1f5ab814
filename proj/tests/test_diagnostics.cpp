#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "subflow/diagnostics.hpp"
#include "subflow/initial_data.hpp"
#include "subflow/rng.hpp"

using namespace subflow;

TEST_CASE("lq and linf norms") {
  const GridSpec g(8, 8, 8);

  SUBCASE("constants: every q-norm is |c| on the unit-measure grid") {
    const Field c(g, -2.0);
    for (double q : {1.0, 2.0, 4.0}) CHECK(lq_norm(c, q) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(linf_norm(c) == 2.0);
  }

  SUBCASE("Jensen monotonicity in q and the Linf bound") {
    SplitMix64 rng(5);
    for (int t = 0; t < 5; ++t) {
      Field f(g);
      for (std::size_t n = 0; n < f.size(); ++n) f[n] = rng.symmetric();
      const double n1 = lq_norm(f, 1.0), n2 = lq_norm(f, 2.0), n4 = lq_norm(f, 4.0);
      CHECK(n1 <= n2 + 1e-12);
      CHECK(n2 <= n4 + 1e-12);
      CHECK(n4 <= linf_norm(f) + 1e-12);
    }
  }

  SUBCASE("L2 of the sine mode") {
    Field f(g);
    for (int i = 0; i < g.nx(); ++i)
      for (int j = 0; j < g.ny(); ++j)
        for (int k = 0; k < g.nt(); ++k)
          f.at(i, j, k) = std::sin(2.0 * std::numbers::pi * i * g.hx());
    CHECK(lq_norm(f, 2.0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-13));
  }

  SUBCASE("q < 1 rejected") {
    CHECK_THROWS_AS(lq_norm(Field(g, 1.0), 0.5), std::invalid_argument);
  }
}

TEST_CASE("harmonic residual") {
  SUBCASE("constant map") {
    const GridSpec g(8, 8, 8);
    CHECK(harmonic_residual(constant_map(g, TargetChart::hyperbolic_ball(2)), 3.0, 1e-2) == 0.0);
  }

  SUBCASE("flat p=2 eigenmode value") {
    const GridSpec g(16, 16, 16);
    const double A = 0.1;
    const MapState phi = eigenmode_map(g, TargetChart::flat_torus(1), A);
    const double s = std::sin(std::numbers::pi * g.hx());
    const double lam = 4.0 * s * s / (g.hx() * g.hx());
    const double res = harmonic_residual(phi, 2.0, 1e-2);
    CHECK(res == doctest::Approx(lam * A / std::sqrt(2.0)).epsilon(1e-12));
    const double continuum = 4.0 * std::numbers::pi * std::numbers::pi * A / std::sqrt(2.0);
    CHECK(res == doctest::Approx(continuum).epsilon(0.02));
  }
}

TEST_CASE("image diameter") {
  const GridSpec g(4, 4, 4);

  SUBCASE("constant map") {
    CHECK(image_diameter(constant_map(g, TargetChart::flat_torus(2))) == 0.0);
  }

  SUBCASE("two-valued map") {
    MapState phi(g, TargetChart::flat_torus(2));
    phi.components[0].at(1, 2, 3) = 1.0;
    CHECK(image_diameter(phi) == 1.0);
  }

  SUBCASE("invariant under node relabeling") {
    MapState phi(g, TargetChart::flat_torus(2));
    SplitMix64 rng(17);
    for (Field& c : phi.components)
      for (std::size_t n = 0; n < c.size(); ++n) c[n] = rng.symmetric();
    MapState shuffled = phi;
    // cyclic relabeling is a permutation of the node set
    for (Field& c : shuffled.components) {
      std::rotate(c.values().begin(), c.values().begin() + 17, c.values().end());
    }
    CHECK(image_diameter(shuffled) == image_diameter(phi));
  }
}

TEST_CASE("image radius") {
  const GridSpec g(4, 4, 4);
  MapState phi(g, TargetChart::flat_torus(2));
  phi.components[0].at(0, 0, 0) = 3.0;
  phi.components[1].at(0, 0, 0) = 4.0;
  CHECK(image_radius(phi) == 5.0);
}

TEST_CASE("verdict formatting") {
  Verdict v{"demo", true, {{"x", 1.5}}, {{"x_max", 2.0}}};
  const std::string s = format_verdict(v);
  CHECK(s.find("[PASS]") != std::string::npos);
  CHECK(s.find("demo") != std::string::npos);
  CHECK(s.find("x=1.5") != std::string::npos);
}
