#pragma once

#include "gee/forms.hpp"
#include "gee/geometry.hpp"
#include "gee/hypersurface.hpp"
#include "gee/slice_data.hpp"
#include "gee/state.hpp"

namespace gee {

//! Background fields built from Einstein-frame slice data:
//!   gbar = -e^{-2 kappa phi0} dt^2 + g0   (static)
//!   Hbar(t) = H0 + dt ^ (e^{-kappa phi0} h0) + t d^S (e^{-kappa phi0} h0)
//! The lapse factor on h0 makes Hbar induce exactly (H0, h0) on the initial
//! slice with respect to the unit normal N = e^{kappa phi0} dt; Hbar is
//! closed for every t. Background Christoffels and their partials are
//! cached (the background is static, so all its time partials vanish).
struct Background {
  Grid grid;
  double kappa = 0.0;
  Field gbar;
  MetricGeometry geo;     // of gbar, second partials available
  Field dgammabar;        // partial_a Gammabar^l_{mn}
  Field Fbar;             // gbar_{mu nu} gbar^{ab} Gammabar^nu_{ab} on the slice
  Field H0_amb;           // ambient extension of H0
  Field heff_amb;         // ambient e^{-kappa phi0} h0
  Field dheff_amb;        // ambient d^Sigma (e^{-kappa phi0} h0)
  Field dtform;           // constant one-form dt

  Field Hbar(double t) const;
  Field dtHbar() const;   // time-independent
};

Background make_background(const SliceData& einstein_data);

//! DeTurck covector D = F - Gamma with F_nu = g_{nu l} g^{ab} Gammabar^l_{ab}.
Field deturck_covector(const MetricGeometry& geo, const Background& bg);
//! the equivalent expression -g_{nu mu} g^{ab} A^mu_{ab}, A = Gamma - Gammabar
Field deturck_covector_via_A(const MetricGeometry& geo, const Background& bg);

//! F as a field, and its jet version for on-slice time derivatives.
Field deturck_F(const MetricGeometry& geo, const Background& bg);
JetF jdeturck_covector(const JetF& g, const JetF& g_inv, const JetF& dg,
                       const Field& gammabar);

//! Lower-order part of the modified Ricci operator (everything except
//! -1/2 g^{ab} partial_a partial_b g):
//!   nabla_(mu F_nu) + g^{ab} g^{cd} [G_{ac mu} G_{bd nu} + G_{ac mu} G_{b nu d}
//!                                    + G_{ac nu} G_{b mu d}],
//! with G_{abc} = g_{b m} Gamma^m_{ac}.
Field richat_lower(const MetricGeometry& geo, const Background& bg);

//! Modified Ricci operator; requires second partials of g in the geometry.
Field ricci_hat(const MetricGeometry& geo, const Background& bg);

//! Lower-order part of the modified Hodge wave operator acting on B (the
//! local-coordinate formula without g^{lk} partial_l partial_k B).
Field hodgehat_lower(const MetricGeometry& geo, const Background& bg,
                     const Field& B, const Field& dB);

//! Full modified Hodge wave operator; ddB supplies all second partials.
Field hodge_hat(const MetricGeometry& geo, const Background& bg, const Field& B,
                const Field& dB, const Field& ddB);

//! First-derivative bundle of the unknowns on a slice; the source of the
//! derivatives (stencil or exact analytic) is the caller's choice, which is
//! what makes manufactured-solution sources honest.
struct SliceFields {
  double t = 0.0;
  Field g, dg;       // (0,2) and all first partials (derivative slot first)
  Field B, dB;
  Field phi, dphi;
};
SliceFields slice_fields_from_state(const EvolutionState& s);

//! Matter right-hand sides of the modified system at a given slice, from
//! first-derivative data only: g^{ab} dd u = f_u.
struct ModifiedRhs {
  Field f_g;
  Field f_B;
  Field f_phi;
  Field H;  // assembled H = Hbar(t) + dB (diagnostic reuse)
};
ModifiedRhs assemble_rhs(const SliceFields& sf, const Background& bg,
                         const MetricGeometry& geo);

//! dt v for the first-order evolution: solves the principal part for the
//! second time derivative,
//!   dtt u = (f + s - 2 g^{0i} d_i v - g^{ij} d_i d_j u) / g^{00}.
StateRates modified_rhs(const EvolutionState& s, const Background& bg,
                        const Sources* src = nullptr);

}  // namespace gee
