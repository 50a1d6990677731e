#include <cstdio>
#include <fstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "gee/scenario.hpp"
#include "gee/verify.hpp"

namespace {

gee::ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  nlohmann::json j;
  in >> j;

  gee::ScenarioConfig cfg;
  if (j.contains("dimension")) cfg.grid.dimension = j["dimension"].get<int>();
  if (j.contains("n_active")) cfg.grid.n_active = j["n_active"].get<int>();
  if (j.contains("points_per_axis"))
    cfg.grid.points_per_axis = j["points_per_axis"].get<int>();
  if (j.contains("axis_length"))
    cfg.grid.axis_length = j["axis_length"].get<double>();
  if (j.contains("stencil_order"))
    cfg.grid.stencil_order = j["stencil_order"].get<int>();
  if (j.contains("cfl")) cfg.cfl = j["cfl"].get<double>();
  if (j.contains("dissipation")) cfg.dissipation = j["dissipation"].get<double>();
  if (j.contains("t_end")) cfg.t_end = j["t_end"].get<double>();
  if (j.contains("scenario")) {
    const auto& s = j["scenario"];
    if (s.contains("name")) cfg.name = s["name"].get<std::string>();
    if (s.contains("params"))
      for (auto& [k, v] : s["params"].items())
        cfg.params[k] = v.get<double>();
  }
  if (j.contains("output")) {
    const auto& o = j["output"];
    if (o.contains("path")) cfg.output_path = o["path"].get<std::string>();
    if (o.contains("cadence")) cfg.cadence = o["cadence"].get<int>();
    if (o.contains("snapshots")) cfg.snapshots = o["snapshots"].get<bool>();
  }
  return cfg;
}

int cmd_run(gee::ScenarioConfig cfg) {
  gee::RunResult res = gee::run_scenario(cfg);
  const gee::Diagnostics& last = res.series.back();
  std::printf("scenario %s: reached t = %.6g in %zu records\n",
              cfg.name.c_str(), res.t_reached, res.series.size());
  std::printf("  final norms: c=[%.3e %.3e %.3e] D=%.3e dC=%.3e divT=%.3e "
              "err=%.3e\n",
              last.c1, last.c2, last.c3, last.deturck, last.dC, last.divT,
              last.err);
  if (res.status != 0) {
    std::printf("  run aborted at t = %.6g: %s\n", res.t_reached,
                res.abort_reason.c_str());
    return res.status;
  }
  return 0;
}

int cmd_verify(const std::string& suite) {
  auto results = gee::run_suite(suite);
  int failed = 0;
  for (const auto& r : results) {
    std::printf("[%s] %-40s %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                r.detail.c_str());
    if (!r.pass) ++failed;
  }
  std::printf("%zu checks, %d failed\n", results.size(), failed);
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gee-lab: numerical laboratory for the generalised Einstein "
               "equations with closed dilaton"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "evolve a scenario");
  std::string config_path;
  run->add_option("--config", config_path, "JSON config file");
  std::string scenario;
  run->add_option("--scenario", scenario,
                  "flat | mms-wave | dilaton-pulse | gauge-probe | scalar-wave");
  int points = 0;
  run->add_option("--points", points, "points per active axis");
  double cfl = 0.0;
  run->add_option("--cfl", cfl, "CFL factor in (0, 1]");
  double t_end = 0.0;
  run->add_option("--t-end", t_end, "end time");
  int order = 0;
  run->add_option("--order", order, "stencil order (2 or 4)");
  std::string strict = "";
  run->add_option("--strict-constraints", strict, "on | off");
  std::string out_path;
  run->add_option("--output", out_path, "diagnostics CSV path");
  double dissipation = 0.0;
  run->add_option("--dissipation", dissipation,
                  "Kreiss-Oliger-style filter strength (default 0, off)");

  // verify
  auto* verify = app.add_subcommand("verify", "run identity/lemma suites");
  std::string suite = "all";
  verify->add_option("suite", suite, "suite name (see --list)")->required(false);
  bool list = false;
  verify->add_flag("--list", list, "list available suites");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      gee::ScenarioConfig cfg;
      if (!config_path.empty()) cfg = load_config(config_path);
      if (!scenario.empty()) cfg.name = scenario;
      if (points > 0) cfg.grid.points_per_axis = points;
      if (cfl > 0.0) cfg.cfl = cfl;
      if (t_end > 0.0) cfg.t_end = t_end;
      if (order > 0) cfg.grid.stencil_order = order;
      if (strict == "on") cfg.strict_constraints = true;
      if (strict == "off") cfg.strict_constraints = false;
      if (!out_path.empty()) cfg.output_path = out_path;
      if (dissipation != 0.0) cfg.dissipation = dissipation;
      if (cfg.cfl <= 0.0 || cfg.cfl > 1.0)
        throw std::runtime_error("cfl must lie in (0, 1]");
      return cmd_run(cfg);
    }
    if (verify->parsed()) {
      if (list) {
        for (const auto& s : gee::suites()) std::printf("%s\n", s.c_str());
        return 0;
      }
      return cmd_verify(suite);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
