#pragma once

#include <map>
#include <string>

#include "gee/analytic.hpp"
#include "gee/evolution.hpp"

namespace gee {

struct ScenarioConfig {
  std::string name = "flat";
  GridConfig grid;
  double cfl = 0.25;
  double t_end = 1.0;
  int cadence = 10;            // monitor every N steps (plus first and last)
  std::string output_path;     // CSV path; empty = no file
  bool snapshots = false;
  std::string snapshot_path;   // JSON path; defaults next to the CSV
  bool strict_constraints = true;
  double dissipation = 0.0;  // Kreiss-Oliger-style filter strength, 0 = off
  std::map<std::string, double> params;

  double param(const std::string& key, double fallback) const {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
  }
};

//! Everything the driver needs to run one scenario.
struct ScenarioSetup {
  Grid grid;
  Background bg;
  EvolutionState init;
  SliceData data;              // the Einstein-frame data behind the jet
  bool has_exact = false;
  ExactFn exact;               // exact tuple sampler (flat, mms, scalar-wave)
  bool has_source = false;
  SourceFn source;
  bool freeze_geometry = false;
};

ScenarioSetup build_scenario(const ScenarioConfig& cfg);

//! Analytic constraint-satisfying data family behind "dilaton-pulse":
//! conformally flat g0 = e^{2 psi} delta, pure-trace k = lambda(x) g0 with
//! lambda = lambda0 + eps phi0, phi1 = -2 eps (d-2), h0 = 0, and the H0
//! amplitude solved pointwise from the Hamiltonian constraint. With
//! amp_psi = amp_phi = eps = 0 it reduces to the homogeneous family
//! k = lambda delta, x0 = (3 + sqrt 3) lambda (string frame).
SliceData dilaton_pulse_data(const Grid& grid, double lambda0, double eps,
                             double amp_psi, double amp_phi, double amp_B = 0.05);

//! Homogeneous string-frame family on the flat torus: k = lambda delta,
//! x0 = (3 + sqrt 3) lambda, everything else zero (n = 3 spatial dims).
SliceData lambda_family_string(const Grid& grid, double lambda);

//! Fixed manufactured trigonometric tuple for "mms-wave".
struct MmsTuple {
  AnalyticTensor g, B, phi;
};
MmsTuple mms_wave_tuple(const Grid& grid, double amp);

//! Operator-form manufactured source s = g[u]^{ab} dd_ab u - f[u] evaluated
//! from the exact analytic derivatives of the tuple.
Sources mms_source_analytic(const Grid& grid, const Background& bg,
                            const MmsTuple& tup, double t);
//! Same-operator source: discrete operators applied to the sampled exact
//! fields (residual of the discretized exact solution is then roundoff).
Sources mms_source_discrete(const Grid& grid, const Background& bg,
                            const MmsTuple& tup, double t);

EvolutionState sample_state(const Grid& grid, const MmsTuple& tup, double t);

struct RunResult {
  int status = 0;              // 0 clean, nonzero abort
  double t_reached = 0.0;
  std::string abort_reason;
  std::vector<Diagnostics> series;
  EvolutionState final_state;
};

RunResult run_scenario(const ScenarioConfig& cfg);

}  // namespace gee
