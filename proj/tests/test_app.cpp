#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "subflow/app.hpp"
#include "subflow/diagnostics.hpp"
#include "subflow/initial_data.hpp"
#include "subflow/rng.hpp"
#include "subflow/snapshot.hpp"

using namespace subflow;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path temp_dir(const std::string& tag) {
  const fs::path p = fs::temp_directory_path() / ("subflow_test_" + tag);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("config round-trips losslessly") {
  RunConfig c;
  c.grid_nx = 8;
  c.grid_ny = 4;
  c.grid_nt = 8;
  c.target = "hyperbolic";
  c.target_dim = 2;
  c.p = 1.5;
  c.delta = 1.0 / 3.0;
  c.stop_tol = 1e-7;
  c.seed = 0xdeadbeefcafe1234ull;
  c.init_kind = "random";
  c.target_energy = 2.5e-3;
  c.out_dir = "some/dir";
  const RunConfig back = parse_config(serialize_config(c));
  CHECK(back == c);
}

TEST_CASE("config parser rejects unknown keys and bad values") {
  CHECK_THROWS_WITH_AS(parse_config("grid_nx = 8\nbogus_key = 1\n"),
                       doctest::Contains("unknown key"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config("grid_nx = banana\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config("grid_nx 8\n"), std::invalid_argument);
  const RunConfig c = parse_config("# comment only\n\n  p = 3.0  # trailing\n");
  CHECK(c.p == 3.0);
}

TEST_CASE("generate_initial kinds") {
  SUBCASE("constant has zero energy") {
    RunConfig c;
    c.grid_nx = c.grid_ny = c.grid_nt = 8;
    c.init_kind = "constant";
    const MapState phi = generate_initial(c);
    CHECK(Ep(phi, 2.0) == 0.0);
  }

  SUBCASE("eigenmode energy matches the closed form") {
    RunConfig c;
    c.grid_nx = c.grid_ny = c.grid_nt = 16;
    c.init_kind = "eigenmode";
    c.init_amplitude = 0.1;
    const MapState phi = generate_initial(c);
    const double expected = std::numbers::pi * std::numbers::pi * 0.01;
    CHECK(Ep(phi, 2.0) == doctest::Approx(expected).epsilon(0.02));
  }

  SUBCASE("random hits the target energy within 1e-3 relative") {
    RunConfig c;
    c.grid_nx = c.grid_ny = c.grid_nt = 8;
    c.init_kind = "random";
    c.target = "hyperbolic";
    c.target_dim = 2;
    c.p = 3.0;
    c.target_energy = 1e-2;
    c.mollify_steps = 20;
    c.seed = 3;
    const MapState phi = generate_initial(c);
    CHECK(std::abs(Ep(phi, 3.0) - 1e-2) <= 1e-3 * 1e-2);
    CHECK(image_radius(phi) <= 0.3);
  }

  SUBCASE("unreachable target energy is reported") {
    RunConfig c;
    c.grid_nx = c.grid_ny = c.grid_nt = 8;
    c.init_kind = "random";
    c.target = "hyperbolic";
    c.target_dim = 2;
    c.p = 2.0;
    c.target_energy = 1e9;  // guard caps the image radius below this
    c.seed = 3;
    CHECK_THROWS_AS(generate_initial(c), std::runtime_error);
  }

  SUBCASE("generation is reproducible") {
    RunConfig c;
    c.grid_nx = c.grid_ny = c.grid_nt = 8;
    c.init_kind = "random";
    c.p = 2.0;
    c.target_energy = 1e-2;
    c.seed = 42;
    const MapState a = generate_initial(c);
    const MapState b = generate_initial(c);
    CHECK(std::memcmp(a.components[0].data(), b.components[0].data(),
                      a.components[0].size() * sizeof(double)) == 0);
  }
}

TEST_CASE("snapshot round trip") {
  const GridSpec g(4, 4, 8);
  MapState phi(g, TargetChart::flat_torus(2));
  SplitMix64 rng(99);
  for (Field& c : phi.components)
    for (std::size_t n = 0; n < c.size(); ++n) c[n] = rng.symmetric();

  const fs::path dir = temp_dir("snap");
  fs::create_directories(dir);
  const fs::path file = dir / "state.snap";
  write_snapshot(file, phi.components);
  CHECK(!fs::exists(file.string() + ".tmp"));

  const Snapshot snap = read_snapshot(file);
  CHECK(snap.spec == g);
  REQUIRE(snap.components.size() == 2);
  for (int c = 0; c < 2; ++c)
    CHECK(std::memcmp(snap.components[c].data(), phi.components[c].data(),
                      g.size() * sizeof(double)) == 0);
  fs::remove_all(dir);
}

TEST_CASE("cmd_run writes a complete output set") {
  RunConfig c;
  c.grid_nx = c.grid_ny = c.grid_nt = 16;
  c.init_kind = "eigenmode";
  c.init_amplitude = 0.1;
  c.p = 2.0;
  c.dt0 = 2e-4;
  c.dt_min = 2e-4;
  c.t_max = 0.025;
  c.stop_tol = 1e-12;
  c.record_every = 10;
  const fs::path dir = temp_dir("run");
  c.out_dir = dir.string();

  CHECK(cmd_run(c, /*quiet=*/true) == 0);
  CHECK(fs::exists(dir / "trace.csv"));
  CHECK(fs::exists(dir / "report.txt"));
  CHECK(fs::exists(dir / "snapshots" / "step_0.snap"));

  // decay-oracle cadence: at least 10 records
  const std::string trace = slurp(dir / "trace.csv");
  CHECK(std::count(trace.begin(), trace.end(), '\n') >= 11);  // header + >= 10 rows
  const std::string report = slurp(dir / "report.txt");
  CHECK(report.find("termination: horizon") != std::string::npos);
  CHECK(report.find("j_sign: -1") != std::string::npos);
  CHECK(report.find("rng: splitmix64-v1") != std::string::npos);

  SUBCASE("identical config produces a bit-identical trace") {
    RunConfig c2 = c;
    const fs::path dir2 = temp_dir("run2");
    c2.out_dir = dir2.string();
    CHECK(cmd_run(c2, true) == 0);
    CHECK(slurp(dir2 / "trace.csv") == trace);
    fs::remove_all(dir2);
  }

  SUBCASE("snapshot cadence") {
    RunConfig c3 = c;
    c3.snapshot_every = 50;
    const fs::path dir3 = temp_dir("run3");
    c3.out_dir = dir3.string();
    CHECK(cmd_run(c3, true) == 0);
    CHECK(fs::exists(dir3 / "snapshots" / "step_50.snap"));
    CHECK(fs::exists(dir3 / "snapshots" / "step_100.snap"));
    CHECK(fs::exists(dir3 / "verdicts.csv"));
    fs::remove_all(dir3);
  }
  fs::remove_all(dir);
}

TEST_CASE("cmd_run fails cleanly on an unwritable output dir") {
  const fs::path blocker = temp_dir("blocker");
  {
    std::ofstream out(blocker);  // a plain file where a directory is needed
    out << "x";
  }
  RunConfig c;
  c.grid_nx = c.grid_ny = c.grid_nt = 8;
  c.init_kind = "constant";
  c.out_dir = (blocker / "sub").string();
  CHECK(cmd_run(c, true) != 0);
  CHECK(!fs::exists(blocker / "sub" / "trace.csv"));
  fs::remove_all(blocker);
}

TEST_CASE("verdict csv writer") {
  const fs::path dir = temp_dir("verdicts");
  fs::create_directories(dir);
  write_verdicts_csv(dir / "verdicts.csv",
                     {{"alpha", true, {{"v", 1.0}}, {}}, {"beta", false, {{"w", 2.0}}, {}}});
  const std::string text = slurp(dir / "verdicts.csv");
  CHECK(text.find("alpha,1,v=1") != std::string::npos);
  CHECK(text.find("beta,0,w=2") != std::string::npos);
  fs::remove_all(dir);
}
