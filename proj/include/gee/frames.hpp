#pragma once

#include "gee/forms.hpp"
#include "gee/geometry.hpp"
#include "gee/hypersurface.hpp"
#include "gee/slice_data.hpp"

namespace gee {

//! Full spacetime tuple on a slice, with the time-derivative payloads needed
//! to form curvature there. In the string frame the dilaton is the closed
//! one-form xi (a potential may or may not be available); in the Einstein
//! frame a potential is mandatory and xi = d phi.
struct FrameTuple {
  Frame frame = Frame::String;
  MetricJet g;
  Field H, dtH;               // closed 3-form
  Field phi, dtphi, dttphi;   // dilaton potential (see has_potential)
  Field xi, dtxi;             // string-frame 1-form
  bool has_potential = false;
};

double kappa_of(int d);

//! g_tilde = e^{-2 kappa phi} g (and back), H and phi unchanged. Requires a
//! dilaton potential when leaving the string frame.
FrameTuple conformal_convert(const FrameTuple& t);

struct ResidualTriple {
  Field res_H;    // 2-form: H-field equation residual
  Field res_Rc;   // symmetric (0,2)
  Field res_phi;  // scalar
};

//! String conventions: res_H = d*H + i_xi H, res_Rc = Rc - H^2/4 + [nabla xi]^sym,
//! res_phi = box phi - |xi|^2 + |H|^2/6 with box phi = -d* xi.
ResidualTriple string_residuals(const MetricGeometry& geo, const Field& H,
                                const Field& dtH, const Field& xi,
                                const Field& dtxi);

//! Einstein conventions: res_H = d*H + 4/(d-2) i_xi H (all tilde-metric
//! operations), res_Rc = Rc - 1/(d-2)[xi ox xi - e^{-4 k phi}/6 |H|^2 g]
//! - e^{-4 k phi} H^2/4, res_phi = box phi + e^{-4 k phi}/6 |H|^2.
ResidualTriple einstein_residuals(const MetricGeometry& geo, const Field& H,
                                  const Field& dtH, const Field& phi,
                                  const Field& dtphi, const Field& dttphi);

//! Einstein-frame energy-momentum tensor
//!   T = 1/(d-2) [xi ox xi - |xi|^2/2 g] + e^{-4 k phi}/4 [H^2 - |H|^2/6 g].
Field stress_tensor(const MetricGeometry& geo, const Field& H, const Field& phi,
                    const Field& dphi_all);
//! algebraically equal variant with the -|H|^2/24 g grouping
Field stress_tensor_alt(const MetricGeometry& geo, const Field& H,
                        const Field& phi, const Field& dphi_all);

//! Jet (value, d/dt) of the stress tensor from primitive jets; used to take
//! honest divergences on a slice.
JetF jstress_tensor(const JetF& g, const JetF& g_inv, const JetF& xi,
                    const JetF& H, const JetF& phi, double kappa);

//! Slice-data transformation between frames (the direction is read off the
//! input's frame tag); includes the B-sector components when present.
SliceData transform_slice_data(const SliceData& data);

//! Change of Einstein frame by a constant c:
//! (g', B', phi') = (e^{-2 kappa c} g, B, phi + c) on fields, and
//! I' = (e^{-2kc} g0, e^{-kc} k, H0, e^{kc} h0, phi0 + c, e^{kc} phi1) on data.
SliceData shift_einstein_data(const SliceData& data, double c);
FrameTuple shift_einstein_tuple(const FrameTuple& t, double c);

}  // namespace gee
