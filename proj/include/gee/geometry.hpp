#pragma once

#include <optional>

#include "gee/field.hpp"

namespace gee {

enum class Signature { Lorentzian, Riemannian };

//! Metric with the slice time-derivative data needed for on-slice calculus.
//! dt/dtt absent means the metric is static in t. Sigma metrics (offset 1)
//! are always static.
struct MetricJet {
  Field g;
  std::optional<Field> dt;
  std::optional<Field> dtt;
};

//! Everything derived from the metric on a slice: inverse, first partials,
//! Christoffel symbols, contracted Gamma_mu = g_{mu nu} g^{ab} Gamma^nu_{ab},
//! and (when second time derivatives are available or the metric is static)
//! the full second partials needed for curvature.
struct MetricGeometry {
  Grid grid;
  int dim = 0;
  int offset = 0;
  Signature sig = Signature::Lorentzian;
  Field g;        // (0,2)
  Field g_inv;    // (2,0)
  Field dg;       // (0,3)  dg_{lam mu nu} = partial_lam g_{mu nu}
  Field gamma;    // (1,2)  Gamma^lam_{mu nu}, upper slot first
  Field gamma_c;  // (0,1)  Gamma_mu
  std::optional<Field> ddg;  // (0,4)  ddg_{a b mu nu} = partial_a partial_b g
  bool has_ddg() const { return ddg.has_value(); }
};

//! Pointwise inverse of a symmetric tensor field (metric of either signature).
Field invert_metric(const Field& g);

//! Canonical-Lorentz-class membership: g_00 < -eps and spatial block positive
//! definite beyond eps at every point. Throws with the worst point on failure.
//! This is the solver's blow-up detector.
void check_lorentzian(const Field& g, double eps = 1e-10);
bool is_lorentzian(const Field& g, double eps = 1e-10);
void check_riemannian(const Field& g, double eps = 1e-10);

//! Extrema used by diagnostics: min over points of g_00 and of the smallest
//! eigenvalue of the spatial block.
struct SignatureExtrema {
  double g00_max = 0.0;
  double g00_min = 0.0;
  double spatial_eig_min = 0.0;
};
SignatureExtrema signature_extrema(const Field& g);

MetricGeometry make_geometry(const MetricJet& mj, Signature sig,
                             bool check_signature = true);

//! Core entry point: derivatives supplied explicitly (exact analytic bundles
//! or pre-assembled stencil data).
MetricGeometry make_geometry_from_derivs(const Field& g, const Field& dg,
                                         std::optional<Field> ddg,
                                         Signature sig,
                                         bool check_signature = true);

//! partial_a Gamma^lam_{mu nu}; requires ddg.
Field dgamma(const MetricGeometry& geo);

//! Ricci tensor from Christoffels (dGamma + Gamma Gamma), the single
//! canonical curvature path used as the oracle everywhere.
Field ricci(const MetricGeometry& geo);
Field scalar_curvature(const MetricGeometry& geo, const Field& rc);

//! Levi-Civita covariant derivative of a fully covariant tensor (rank <= 4
//! in the result). Derivative index first. dtT supplies the time partial.
Field covariant_derivative(const MetricGeometry& geo, const Field& T,
                           const Field* dtT = nullptr);

//! Hessian and Beltrami wave operator of a scalar. dphi is the full first
//! partial bundle (rank 1), ddphi the full second partials (rank 2).
Field hessian_scalar(const MetricGeometry& geo, const Field& dphi,
                     const Field& ddphi);
Field box_scalar(const MetricGeometry& geo, const Field& dphi,
                 const Field& ddphi);

//! (div T)_nu = nabla^mu T_{mu nu} for symmetric (0,2) T.
Field divergence_sym2(const MetricGeometry& geo, const Field& T,
                      const Field* dtT = nullptr);

Field einstein_tensor(const MetricGeometry& geo);

//! Plain trace over two slots of one tensor (no metric), e.g. partial_lam
//! Gamma^lam_{mu nu} from dgamma.
Field trace_slots(const Field& a, int s1, int s2);

//! g^{mu nu} T_{mu nu ...}: metric trace over the two leading slots.
Field metric_trace(const MetricGeometry& geo, const Field& T, int s1 = 0,
                   int s2 = 1);

}  // namespace gee
