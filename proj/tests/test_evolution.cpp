#include <cmath>
#include <cstdio>

#include "doctest.h"
#include "json.hpp"

#include "gee/scenario.hpp"
#include "gee/verify.hpp"

using namespace gee;

namespace {
ScenarioConfig base(const std::string& name, int pts, double t_end) {
  ScenarioConfig cfg;
  cfg.name = name;
  cfg.grid.points_per_axis = pts;
  cfg.t_end = t_end;
  cfg.cadence = 1000;  // record only first and last
  return cfg;
}
}  // namespace

TEST_CASE("flat scenario is a fixed point of the integrator") {
  ScenarioConfig cfg = base("flat", 32, 2.0);
  RunResult r = run_scenario(cfg);
  REQUIRE(r.status == 0);
  for (const auto& d : r.series) {
    CHECK(d.c1 < 1e-11);
    CHECK(d.c2 < 1e-11);
    CHECK(d.c3 < 1e-11);
    CHECK(d.deturck < 1e-11);
    CHECK(d.dC < 1e-11);
    CHECK(d.divT < 1e-11);
    CHECK(d.err < 1e-11);
    CHECK(d.g00_min == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(d.spatial_eig_min == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("records are strictly time ordered and deterministic") {
  ScenarioConfig cfg = base("dilaton-pulse", 32, 0.3);
  cfg.cadence = 2;
  RunResult a = run_scenario(cfg);
  RunResult b = run_scenario(cfg);
  REQUIRE(a.status == 0);
  REQUIRE(a.series.size() == b.series.size());
  for (size_t i = 1; i < a.series.size(); ++i)
    CHECK(a.series[i].t > a.series[i - 1].t);
  for (size_t i = 0; i < a.series.size(); ++i) {
    CHECK(a.series[i].c1 == b.series[i].c1);  // bit-identical
    CHECK(a.series[i].deturck == b.series[i].deturck);
    CHECK(a.series[i].divT == b.series[i].divT);
  }
}

TEST_CASE("scalar wave advects with the d'Alembert solution") {
  ScenarioConfig cfg = base("scalar-wave", 64, 1.0);
  RunResult r = run_scenario(cfg);
  REQUIRE(r.status == 0);
  CHECK(r.series.back().err < 1e-5);
}

TEST_CASE("RK4 time-order measurement on the scalar wave") {
  // fixed spatial resolution, compare against a tiny-dt reference so the
  // spatial error cancels; halving dt must reduce the error ~16x
  ScenarioConfig cfg = base("scalar-wave", 32, 0.0);  // t_end unused here
  ScenarioSetup su = build_scenario(cfg);
  auto advance = [&](double dt, double T) {
    EvolutionState s = su.init;
    const int n = static_cast<int>(std::round(T / dt));
    for (int i = 0; i < n; ++i) s = time_step(s, su.bg, dt, nullptr, true);
    return s;
  };
  const double T = 0.4;
  EvolutionState ref = advance(T / 512, T);
  EvolutionState c1 = advance(T / 8, T);
  EvolutionState c2 = advance(T / 16, T);
  const double e1 = linf(sub(c1.phi, ref.phi));
  const double e2 = linf(sub(c2.phi, ref.phi));
  CHECK(e1 / e2 == doctest::Approx(16.0).epsilon(0.25));
}

TEST_CASE("mms sources: flat tuple gives zero source") {
  ScenarioConfig cfg = base("mms-wave", 16, 0.1);
  ScenarioSetup su = build_scenario(cfg);
  MmsTuple flat;
  flat.g = minkowski(su.grid.d);
  flat.B = AnalyticTensor(2, su.grid.d);
  flat.phi = AnalyticTensor(0, su.grid.d);
  Sources s = mms_source_analytic(su.grid, su.bg, flat, 0.3);
  CHECK(linf(s.sg) < 1e-12);
  CHECK(linf(s.sB) < 1e-12);
  CHECK(linf(s.sphi) < 1e-12);
}

TEST_CASE("mms sources: discrete-operator source gives roundoff residual") {
  // the residual of the discretized exact solution against the discrete
  // operators is s_disc - s_disc = 0 by construction; against the analytic
  // source it is the truncation gap, which must converge at stencil order
  double gap[2];
  int idx = 0;
  for (int pts : {32, 64}) {
    GridConfig gc;
    gc.dimension = 4;
    gc.points_per_axis = pts;
    Grid g = build_grid(gc);
    gap[idx++] = checks::mms_residual_err(g);
  }
  CHECK(std::log2(gap[0] / gap[1]) == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("mms evolution converges at the stencil order") {
  double err[2];
  int idx = 0;
  for (int pts : {24, 48}) {
    ScenarioConfig cfg = base("mms-wave", pts, 0.25);
    RunResult r = run_scenario(cfg);
    REQUIRE(r.status == 0);
    err[idx++] = r.series.back().err;
  }
  CHECK(std::log2(err[0] / err[1]) == doctest::Approx(4.0).epsilon(0.12));
}

TEST_CASE("dilaton pulse: gauge and constraint norms converge at order 4") {
  double dat[3][4];
  int idx = 0;
  for (int pts : {24, 48, 96}) {
    ScenarioConfig cfg = base("dilaton-pulse", pts, 0.25);
    RunResult r = run_scenario(cfg);
    REQUIRE(r.status == 0);
    const Diagnostics& d = r.series.back();
    dat[idx][0] = d.deturck;
    dat[idx][1] = d.dC;
    dat[idx][2] = std::max({d.c1, d.c2, d.c3});
    dat[idx][3] = d.divT;
    ++idx;
  }
  for (int q = 0; q < 4; ++q) {
    const double order = checks::fit_order3(dat[0][q], dat[1][q], dat[2][q]);
    CHECK(order == doctest::Approx(4.0).epsilon(0.09));
  }
}

TEST_CASE("abort on signature loss reports the time reached") {
  // gauge-probe data broken hard enough blows up quickly at low resolution
  ScenarioConfig cfg = base("gauge-probe", 16, 50.0);
  cfg.strict_constraints = false;
  cfg.params["break"] = 8.0;
  RunResult r = run_scenario(cfg);
  CHECK(r.status != 0);
  CHECK(r.t_reached < 50.0);
  CHECK(!r.abort_reason.empty());
}

TEST_CASE("unknown scenario and bad config are reported") {
  ScenarioConfig cfg = base("warp-drive", 16, 1.0);
  CHECK_THROWS_WITH_AS(run_scenario(cfg), doctest::Contains("unknown scenario"),
                       std::runtime_error);
}

TEST_CASE("snapshots serialize fields with name, valence and components") {
  ScenarioConfig cfg = base("flat", 16, 0.2);
  cfg.snapshots = true;
  cfg.snapshot_path = "/tmp/gee_test_snaps.json";
  RunResult r = run_scenario(cfg);
  REQUIRE(r.status == 0);
  std::FILE* f = std::fopen("/tmp/gee_test_snaps.json", "rb");
  REQUIRE(f != nullptr);
  std::string text;
  char buf[4096];
  size_t n;
  while ((n = std::fread(buf, 1, sizeof(buf), f)) > 0) text.append(buf, n);
  std::fclose(f);
  auto j = nlohmann::json::parse(text);
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 3 * r.series.size());  // g, B, phi per record
  CHECK(j[0]["field"] == "g");
  CHECK(j[0]["valence"][0] == 0);
  CHECK(j[0]["valence"][1] == 2);
  CHECK(j[0]["t"] == 0.0);
  // g_00 = -1 for the flat run: first component block holds npts values
  CHECK(j[0]["components"][0].get<double>() == -1.0);
  CHECK(j[0]["components"].size() == 16u * 16u);  // d^2 comps x 16 points
  std::remove("/tmp/gee_test_snaps.json");
}

TEST_CASE("diagnostics CSV is written with the exact column order") {
  ScenarioConfig cfg = base("flat", 16, 0.3);
  cfg.output_path = "/tmp/gee_test_diag.csv";
  RunResult r = run_scenario(cfg);
  REQUIRE(r.status == 0);
  std::FILE* f = std::fopen("/tmp/gee_test_diag.csv", "r");
  REQUIRE(f != nullptr);
  char line[512];
  REQUIRE(std::fgets(line, sizeof(line), f) != nullptr);
  CHECK(std::string(line) ==
        "t,c1_linf,c2_linf,c3_linf,deturck_linf,dC_linf,divT_linf,err_linf,"
        "g00_min,spatial_eig_min\n");
  int rows = 0;
  while (std::fgets(line, sizeof(line), f)) ++rows;
  std::fclose(f);
  CHECK(rows == static_cast<int>(r.series.size()));
  std::remove("/tmp/gee_test_diag.csv");
}
