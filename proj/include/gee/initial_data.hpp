#pragma once

#include "gee/background.hpp"
#include "gee/slice_data.hpp"
#include "gee/state.hpp"

namespace gee {

struct ConstraintResiduals {
  Field r1;  // scalar (Hamiltonian-type)
  Field r2;  // covector (momentum-type)
  Field r3;  // 1-form (H-field normal equation)
};

//! String-frame constraint residuals:
//!  r1 = Sc + (tr k)^2 - |k|^2
//!       - [ |H0|^2/12 + |h0|^2/4 + 2 (d^S)* xi0 + 2 (tr k) x0 + |xi0|^2 - x0^2 ]
//!  r2 = div k - d^S tr k - [ 1/4 C(h0,H0) - d^S x0 + i_xi0 k ]
//!  r3 = ((d^S)* + i_xi0) h0
ConstraintResiduals string_constraint_residuals(const SliceData& data);

//! Einstein-frame constraint residuals:
//!  r1 = Sc + (tr k)^2 - |k|^2 - kappa [|d phi0|^2 + phi1^2]
//!       - e^{-4 kappa phi0}/12 [|H0|^2 + 3 |h0|^2]
//!  r2 = div k - d^S tr k - kappa phi1 d phi0 - e^{-4 kappa phi0}/4 C(h0, H0)
//!  r3 = ((d^S)* + 4 kappa i_{d phi0}) h0
ConstraintResiduals einstein_constraint_residuals(const SliceData& data);

//! Residual scale test: accepted when every residual linf is below
//! max(1e-10, 10 h^p scale). Returns the worst ratio residual/threshold.
double constraint_violation(const SliceData& data);

//! Initial values for g and phi from Einstein-frame data, satisfying
//!  g|_Sigma = gbar|_Sigma, dt g_{mn} = 2 e^{-k phi0} k_{mn},
//!  dt g_00 = -2 e^{-2 k phi0} [F_0 + e^{-k phi0} tr k],
//!  dt g_{0k} = e^{-2 k phi0} [GammaS_k - F_k + kappa d_k phi0],
//!  phi = phi0, dt phi = e^{-k phi0} phi1,
//! so that D[g, gbar] vanishes on the slice at truncation order.
EvolutionState setup_metric_dilaton(const SliceData& data, const Background& bg);

//! Completes the jet with the B-field: B has no normal component initially
//! (b0 = 0) and b1 is solved from C^par = 0 by evaluating C^par with b1 = 0
//! and subtracting (the b1 coefficient in C^par is exactly one).
void setup_bfield(const SliceData& data, const Background& bg,
                  EvolutionState& jet);

struct InitialGaugeCheck {
  double deturck = 0.0;     // |D|_inf on the slice
  double dt_deturck = 0.0;  // |dt D|_inf using the modified-system dtt u
  double c_par = 0.0;       // |C^par|_inf
  double dC = 0.0;          // |dC|_inf
  double threshold = 0.0;
  bool pass = false;
};

//! Gauge vanishing on the initial slice: D = 0, dt D = 0, dC = 0 up to
//! truncation, provided the data satisfies the constraints.
InitialGaugeCheck initial_gauge_check(const EvolutionState& jet,
                                      const Background& bg);

}  // namespace gee
