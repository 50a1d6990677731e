#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "gee/background.hpp"
#include "gee/initial_data.hpp"
#include "gee/state.hpp"

namespace gee {

//! One monitor record. Column order in the CSV is fixed:
//! t, c1_linf, c2_linf, c3_linf, deturck_linf, dC_linf, divT_linf,
//! err_linf, g00_min, spatial_eig_min.
struct Diagnostics {
  double t = 0.0;
  double c1 = 0.0, c2 = 0.0, c3 = 0.0;
  double deturck = 0.0;
  double dC = 0.0;
  double divT = 0.0;
  double err = 0.0;
  double g00_min = 0.0;
  double spatial_eig_min = 0.0;
};

using SourceFn = std::function<Sources(double t)>;
//! samples the exact tuple (u and v) at time t, for error monitors and MMS
using ExactFn = std::function<EvolutionState(double t)>;

//! sqrt(max eigenvalue of -g^{ij}/g^{00}) over the grid.
double max_char_speed(const Field& g);

//! One classical RK4 step of the first-order system (u, v). Signature is
//! re-validated by the rate evaluations; a violation throws, and the caller
//! keeps the last good state. With freeze_geometry the g and B blocks are
//! held fixed (validation scenarios only).
EvolutionState time_step(const EvolutionState& s, const Background& bg,
                         double dt, const SourceFn* src = nullptr,
                         bool freeze_geometry = false);

//! Sixth-difference Kreiss-Oliger-style filter for long runs, applied after
//! a step: u += sigma/64 (D+ D-)^3 u along every active axis. Off by default
//! and not part of the continuum system; the added term is O(h^5), below the
//! scheme order.
void apply_dissipation(EvolutionState& s, double sigma);

//! One diagnostics record: induced-data constraint norms, gauge norms,
//! stress-tensor divergence, solution error, signature extrema.
Diagnostics monitors(const EvolutionState& s, const Background& bg,
                     const EvolutionState* exact = nullptr);

void write_csv_header(std::FILE* f);
void write_csv_row(std::FILE* f, const Diagnostics& d);

}  // namespace gee
