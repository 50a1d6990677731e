#pragma once

#include <string>
#include <vector>

#include "gee/scenario.hpp"

namespace gee {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

//! Identity/lemma experiments at a single resolution. Callers measure
//! convergence orders by re-running on refined grids. Everything is
//! deterministic under the given seed.
namespace checks {

//! Valid (not constraint-solving) Einstein-frame slice data: positive
//! definite g0, smooth phi0, closed H0 (built as d of a 2-form), plus a
//! random B-sector.
SliceData random_einstein_data(const Grid& gr, unsigned seed, double amp);

//! Random analytic tuple (Lorentzian metric, 2-form, scalar), time-dependent.
MmsTuple random_tuple(const Grid& gr, unsigned seed, double amp);

//! |Rc_hat - (Rc + nabla_(mu D_nu))|_inf on a random analytic metric over a
//! random curved background.
double richat_oracle_err(const Grid& gr, unsigned seed);

//! |Box_hat B - (-d* d B - d C)|_inf, same setting plus a random 2-form.
double hodge_oracle_err(const Grid& gr, unsigned seed);

struct CrossFrame {
  double eH = 0.0, eRc = 0.0, ephi = 0.0;  // identity violations
  double h2_scaling = 0.0;                  // pointwise H^2 scaling, relative
  double tol = 0.0;                         // 5 h^p (residual scale)
};
CrossFrame cross_frame_errs(const Grid& gr, unsigned seed);

//! relative |D[g', gbar'] - D[g, gbar]|_inf under a frame shift by c
double deturck_shift_err(const Grid& gr, double c, unsigned seed);
//! relative |C[g', B, gbar'] - e^{2 kappa c} C[g, B, gbar]|_inf
double lorenz_scale_err(const Grid& gr, double c, unsigned seed);

struct LemmaErr {
  double d_err = 0.0;     // dA decomposition vs ambient oracle
  double cod_err = 0.0;   // d*A decomposition vs ambient oracle
  double nder_err = 0.0;  // [(nabla A)(N)]^par vs D(A_perp) - A(k)
};
LemmaErr hypersurface_lemma_err(const Grid& gr, int degree, unsigned seed);

struct JetNorms {
  double deturck = 0.0, dt_deturck = 0.0, c_par = 0.0, dC = 0.0;
};
//! Gauge norms of the initial jet built from the pulse data family;
//! x0_break != 1 deliberately breaks the Hamiltonian budget.
JetNorms pulse_jet_norms(const Grid& gr, double lambda, double eps,
                         double amp_psi, double amp_phi, double x0_break = 1.0);

//! worst relative error of a string -> Einstein -> string round trip
double data_roundtrip_err(const Grid& gr, unsigned seed);

//! worst relative error of setup(shift(data)) vs shift(setup(data))
double shift_commutation_err(const Grid& gr, double c);

//! truncation gap between the analytic and same-operator manufactured
//! sources (the residual of the discretized exact solution)
double mms_residual_err(const Grid& gr);

double fit_order(double e_coarse, double e_fine);
//! least-squares slope over three resolutions at refinement factor 2
double fit_order3(double e0, double e1, double e2);

}  // namespace checks

std::vector<std::string> suites();
std::vector<CheckResult> run_suite(const std::string& suite);

}  // namespace gee
