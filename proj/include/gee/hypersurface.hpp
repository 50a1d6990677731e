#pragma once

#include "gee/forms.hpp"
#include "gee/geometry.hpp"
#include "gee/slice_data.hpp"

namespace gee {

//! Tangent/normal machinery over the t = const slice. The normal is
//! recomputed from the evolved metric every time, never frozen; the slice is
//! always spacelike (epsilon = g(N,N) = -1 hard-wired).
struct SliceFrame {
  Field lapse;      // |g_00|-like factor (-g^{00})^{-1/2}
  Field N_up;       // future-directed unit normal, N^0 > 0
  Field N_flat;     // g(N, .)
  Field g_sigma;    // induced metric (spatial block), sigma tensor
  MetricGeometry sigma_geo;
  Field k;          // second fundamental form [nabla N^flat]^par, sigma tensor
};

SliceFrame make_frame(const MetricGeometry& geo);

// ---- index plumbing between ambient and sigma tensors -----------------------

Field restrict_to_sigma(const Field& ambient);
//! zero-fill extension (valid as the tangential extension only on adapted
//! slices where the shift vanishes)
Field extend_to_ambient(const Field& sigma);
//! projector extension P*S with P^nu_mu = delta^nu_mu + N^nu N_mu, the
//! ambient tensor agreeing with S on TSigma and annihilating N
Field tangential_extension(const Field& sigma, const SliceFrame& frame);

//! (alpha ^ A)_{m0..mp} for a one-form alpha and p-form A.
Field wedge1(const Field& alpha, const Field& A);

// ---- decomposition -----------------------------------------------------------

struct FormDecomposition {
  Field par;   // A^par   in Omega^p(Sigma)
  Field perp;  // A^perp  in Omega^{p-1}(Sigma); rank-0 placeholder for p=0
};

//! A = A^par - N^flat ^ A^perp (epsilon = -1, timelike normal).
FormDecomposition decompose_restrict(const Field& A, const SliceFrame& frame);
Field reconstruct(const FormDecomposition& d, const SliceFrame& frame);

//! Adapted-coordinate closed form k_mn = 1/2 |g_00|^{-1/2} d_t g_mn;
//! requires g_{0n} = 0 on the slice.
Field second_fundamental_form_adapted(const Field& g, const Field& dtg);

//! Decompositions of dA and d*A on Sigma from slice inputs
//! (A0 = A|_Sigma, A1 = nabla_N A), per the ambient/hypersurface
//! exterior-calculus correspondence:
//!   dA  = d^S A0par - N^flat ^ [A1par - d^S A0perp - k . A0par]
//!   d*A = (d^S)* A0par + A1perp + A0perp tr k + k . A0perp
//!         - N^flat ^ [-(d^S)* A0perp]
struct RestrictedDerivatives {
  Field d_par, d_perp;
  Field cod_par, cod_perp;
  bool has_cod_perp = false;  // false when p = 1 (the perp part is absent)
};
RestrictedDerivatives restricted_exterior_ops(const Field& A0par,
                                              const Field& A0perp,
                                              const Field& A1par,
                                              const Field& A1perp,
                                              const Field& k,
                                              const MetricGeometry& sigma_geo);

//! [ (nabla A)(N) ]^par = D(A^perp) - A(k) on the slice.
Field normal_derivative_tangential(const MetricGeometry& ambient_geo,
                                   const SliceFrame& frame, const Field& A,
                                   const Field& dtA);

// ---- induced initial data -----------------------------------------------------

//! Reads off the slice data (g0, k, H0par, h0, phi0, phi1/x0) induced by the
//! ambient fields; H is the full three-form on the slice (background plus dB).
SliceData induced_initial_data(const MetricGeometry& geo, const SliceFrame& frame,
                               const Field& H, const Field& phi,
                               const Field& dphi_all, Frame frame_tag);

//! B-sector slice data (B0, b0, B1, b1) from B and nabla_N B.
void induced_bfield_data(const MetricGeometry& geo, const SliceFrame& frame,
                         const Field& B, const Field& dtB, SliceData& out);

//! (H0par, h0) from potential slice data: H0par = d^S B0, and
//! h0 = B1 - d^S b0 - k . B0.
std::pair<Field, Field> potential_slice_data(const Field& B0, const Field& b0,
                                             const Field& B1, const Field& k,
                                             const MetricGeometry& sigma_geo);

}  // namespace gee
