#pragma once

#include "gee/geometry.hpp"

namespace gee {

//! Differential forms are fully antisymmetric covariant Fields; degree is
//! the tensor rank (capped at 4, dH being the highest form needed).
//! as_form antisymmetrizes and checks the input was already a form.
Field as_form(const Field& a, double tol = 1e-10);

//! (dA)_{m0..mp} = (p+1) partial_[m0 A_{m1..mp]}. For ambient forms the
//! result has time components, so the slice time derivative dtA is required
//! (pass an explicit zero field for static forms). Sigma forms take no dtA.
Field exterior_derivative(const Field& A, const Field* dtA = nullptr);

//! (d*A)_{m2..mp} = -nabla^lam A_{lam m2..mp}
Field codifferential(const MetricGeometry& geo, const Field& A,
                     const Field* dtA = nullptr);

//! Interior products: i_xi with the index raised by the supplied metric, or
//! with an already-contravariant vector field X.
Field interior_form(const MetricGeometry& geo, const Field& xi, const Field& A);
Field interior_vec(const Field& X_up, const Field& A);

//! Lie-algebra action of an endomorphism on p-forms,
//! (k . A)_{i1..ip} = (-1)^p p k^j_{[i1} A_{i2..ip]j}
//! implemented via the equivalent -sum_s k^j_{i_s} A_{..j..}. k is given as
//! a symmetric (0,2) tensor; the Weingarten endomorphism is formed with geo.
Field k_dot_form(const MetricGeometry& geo, const Field& k, const Field& A);
//! same action for an endomorphism k^j_i supplied directly (slots: up, low)
Field endo_dot_form(const Field& k_endo, const Field& A);

//! C_i(h, H) = g^{kl} g^{mn} h_{km} H_{lni}
Field c_contraction(const MetricGeometry& geo, const Field& h, const Field& H);

//! H2_{mu nu} = g^{ka}g^{rb} H_{mu k r} H_{nu a b} and the full contraction
//! |H|^2 = H_{abc} H^{abc} (no factorial normalization).
struct HContractions {
  Field h2;      // symmetric (0,2)
  Field norm2;   // scalar
};
HContractions h_contractions(const MetricGeometry& geo, const Field& H);

//! |A|^2 = A_{...} A^{...} for a p-form (full contraction, no factorial)
Field form_norm2(const MetricGeometry& geo, const Field& A);

//! The modified codifferential  C_nu = d*_{g,gbar} B_nu = -g^{kl} nablabar_k B_{l nu}
//! (dynamical metric contraction, background connection).
Field modified_codifferential(const MetricGeometry& geo,
                              const MetricGeometry& bg_geo, const Field& B,
                              const Field& dtB);

//! The equivalent decomposition d*B + D^mu B_{mu nu} + g^{kl} A^mu_{k nu} B_{l mu}
//! with A = Gamma - Gammabar and D the DeTurck covector; exposed for
//! cross-checking the two displayed expressions.
Field modified_codifferential_decomposed(const MetricGeometry& geo,
                                         const MetricGeometry& bg_geo,
                                         const Field& B, const Field& dtB);

//! Jet version: inputs carry exact time derivatives, the output jet gives
//! (C, dt C), enough to evaluate dC on a slice.
JetF jmodified_codifferential(const JetF& g_inv, const JetF& B, const JetF& dB,
                              const Field& gammabar);

//! jet of the inverse metric from (g, dt g): d(g^-1) = -g^-1 (dt g) g^-1
JetF jinvert_metric(const Field& g, const Field& g_inv, const Field& dtg);

}  // namespace gee
