#include "gee/frames.hpp"

#include <cmath>
#include <stdexcept>

namespace gee {

double kappa_of(int d) {
  if (d < 3) throw std::runtime_error("kappa_of: d must be >= 3");
  return 1.0 / (d - 2);
}

namespace {

// conformal jet: gt = E g with E = e^{c phi}; returns (gt, dt gt, dtt gt)
MetricJet conformal_metric_jet(const MetricJet& g, const Field& phi,
                               const Field& dtphi, const Field& dttphi,
                               double c) {
  const Grid& gr = g.g.grid();
  Field E = exp_scale(phi, c);
  MetricJet out;
  out.g = mul_scalar(g.g, E);
  const Field zero2(gr, 2, g.g.dim(), 0);
  const Field& dtg = g.dt ? *g.dt : zero2;
  // dt gt = E (dt g + c dt phi g)
  Field t = add(dtg, mul_scalar(g.g, scale(dtphi, c)));
  out.dt = mul_scalar(t, E);
  if (g.dtt || !g.dt) {
    const Field& dttg = g.dtt ? *g.dtt : zero2;
    // dtt gt = E [ dtt g + c dtt phi g + 2 c dt phi dt g + c^2 (dt phi)^2 g ]
    Field s = dttg;
    axpy(s, 1.0, mul_scalar(g.g, scale(dttphi, c)));
    axpy(s, 2.0, mul_scalar(dtg, scale(dtphi, c)));
    Field dtphi2 = mul_scalar(dtphi, dtphi);
    axpy(s, 1.0, mul_scalar(g.g, scale(dtphi2, c * c)));
    out.dtt = mul_scalar(s, E);
  }
  return out;
}

}  // namespace

FrameTuple conformal_convert(const FrameTuple& t) {
  const int d = t.g.g.dim();
  const double kap = kappa_of(d);
  FrameTuple out = t;
  if (t.frame == Frame::String) {
    if (!t.has_potential)
      throw std::runtime_error(
          "conformal_convert: Einstein frame requires a dilaton potential");
    out.frame = Frame::Einstein;
    out.g = conformal_metric_jet(t.g, t.phi, t.dtphi, t.dttphi, -2.0 * kap);
  } else {
    out.frame = Frame::String;
    out.g = conformal_metric_jet(t.g, t.phi, t.dtphi, t.dttphi, 2.0 * kap);
  }
  return out;  // H, phi unchanged
}

ResidualTriple string_residuals(const MetricGeometry& geo, const Field& H,
                                const Field& dtH, const Field& xi,
                                const Field& dtxi) {
  const Grid& gr = geo.grid;
  // closedness check separates modeling error from discretization
  Field dxi = exterior_derivative(xi, &dtxi);
  const double scale_xi = linf(xi);
  const double thresh = 10.0 * std::pow(gr.h, gr.order) * scale_xi + 1e-13;
  if (linf(dxi) > thresh)
    throw std::runtime_error("string_residuals: dilaton not closed");

  ResidualTriple r;
  r.res_H = add(codifferential(geo, H, &dtH), interior_form(geo, xi, H));

  HContractions hc = h_contractions(geo, H);
  Field nxi = covariant_derivative(geo, xi, &dtxi);
  Field rc = ricci(geo);
  r.res_Rc = rc;
  axpy(r.res_Rc, -0.25, hc.h2);
  axpy(r.res_Rc, 1.0, symmetrize_pair(nxi, 0, 1));

  // box phi = g^{mu nu} nabla_mu xi_nu for xi = d phi
  Field boxphi = contract(geo.g_inv, nxi, {{0, 0}, {1, 1}});
  r.res_phi = boxphi;
  axpy(r.res_phi, -1.0, form_norm2(geo, xi));
  axpy(r.res_phi, 1.0 / 6.0, hc.norm2);
  return r;
}

ResidualTriple einstein_residuals(const MetricGeometry& geo, const Field& H,
                                  const Field& dtH, const Field& phi,
                                  const Field& dtphi, const Field& dttphi) {
  const int d = geo.dim;
  const double kap = kappa_of(d);
  Field dphi = grad(phi, &dtphi);
  Field ddphi = second_partials(phi, dtphi, dttphi);

  ResidualTriple r;
  r.res_H = add(codifferential(geo, H, &dtH),
                scale(interior_form(geo, dphi, H), 4.0 * kap));

  HContractions hc = h_contractions(geo, H);
  Field E4 = exp_scale(phi, -4.0 * kap);
  Field rc = ricci(geo);
  r.res_Rc = rc;
  axpy(r.res_Rc, -kap, contract(dphi, dphi, {}));
  Field e4h2 = mul_scalar(hc.norm2, E4);
  axpy(r.res_Rc, kap / 6.0, mul_scalar(geo.g, e4h2));
  axpy(r.res_Rc, -0.25, mul_scalar(hc.h2, E4));

  r.res_phi = box_scalar(geo, dphi, ddphi);
  axpy(r.res_phi, 1.0 / 6.0, e4h2);
  return r;
}

Field stress_tensor(const MetricGeometry& geo, const Field& H, const Field& phi,
                    const Field& dphi_all) {
  const double kap = kappa_of(geo.dim);
  const Field& xi = dphi_all;
  Field T = scale(contract(xi, xi, {}), kap);
  Field xi2 = form_norm2(geo, xi);
  axpy(T, -0.5 * kap, mul_scalar(geo.g, xi2));
  HContractions hc = h_contractions(geo, H);
  Field E4 = exp_scale(phi, -4.0 * kap);
  axpy(T, 0.25, mul_scalar(hc.h2, E4));
  axpy(T, -1.0 / 24.0, mul_scalar(geo.g, mul_scalar(hc.norm2, E4)));
  return T;
}

Field stress_tensor_alt(const MetricGeometry& geo, const Field& H,
                        const Field& phi, const Field& dphi_all) {
  const double kap = kappa_of(geo.dim);
  const Field& xi = dphi_all;
  Field T = scale(contract(xi, xi, {}), kap);
  Field xi2 = form_norm2(geo, xi);
  axpy(T, -0.5 * kap, mul_scalar(geo.g, xi2));
  HContractions hc = h_contractions(geo, H);
  Field E4 = exp_scale(phi, -4.0 * kap);
  Field inner = hc.h2;
  axpy(inner, -1.0 / 6.0, mul_scalar(geo.g, hc.norm2));
  axpy(T, 0.25, mul_scalar(inner, E4));
  return T;
}

JetF jstress_tensor(const JetF& g, const JetF& g_inv, const JetF& xi,
                    const JetF& H, const JetF& phi, double kappa) {
  JetF T = jscale(jcontract(xi, xi, {}), kappa);
  JetF xi_up = jcontract(g_inv, xi, {{1, 0}});
  JetF xi2 = jcontract(xi_up, xi, {{0, 0}});
  T = jsub(T, jscale(jmul_scalar(g, xi2), 0.5 * kappa));

  // H^2 and |H|^2 jets
  JetF t = jtranspose(jcontract(g_inv, H, {{1, 1}}), {1, 0, 2});
  JetF Hup12 = jtranspose(jcontract(g_inv, t, {{1, 2}}), {1, 2, 0});
  JetF h2 = jcontract(H, Hup12, {{1, 1}, {2, 2}});
  JetF Hup = jcontract(g_inv, Hup12, {{1, 0}});
  JetF hn2 = jcontract(H, Hup, {{0, 0}, {1, 1}, {2, 2}});

  JetF E4 = jexp_scale(phi, -4.0 * kappa);
  T = jadd(T, jscale(jmul_scalar(h2, E4), 0.25));
  T = jsub(T, jscale(jmul_scalar(g, jmul_scalar(hn2, E4)), 1.0 / 24.0));
  return T;
}

// ---- slice data transformations -----------------------------------------------

SliceData transform_slice_data(const SliceData& data) {
  const Grid& gr = data.g0.grid();
  const int d = gr.d;
  const double kap = kappa_of(d);

  MetricJet mj0;
  SliceData out;
  if (data.frame == Frame::String) {
    if (!data.has_potential())
      throw std::runtime_error(
          "transform_slice_data: Einstein frame requires a dilaton potential");
    const Field& phi = *data.phi0;
    Field Ek = exp_scale(phi, kap);         // e^{kappa phi}
    Field Emk = exp_scale(phi, -kap);
    Field Em2k = exp_scale(phi, -2.0 * kap);
    Field E2k = exp_scale(phi, 2.0 * kap);

    out.frame = Frame::Einstein;
    out.g0 = mul_scalar(data.g0, Em2k);
    // k~ = e^{-k phi} [k - kappa N(phi) g0],  N(phi) = x0
    Field t = data.k;
    axpy(t, -kap, mul_scalar(data.g0, data.x0));
    out.k = mul_scalar(t, Emk);
    out.H0 = data.H0;
    out.h0 = mul_scalar(data.h0, Ek);
    out.phi0 = phi;
    out.x0 = mul_scalar(data.x0, Ek);  // phi1~ = e^{k phi} phi1
    out.xi0 = grad(phi);               // d^Sigma phi0

    if (data.B0) {
      mj0.g = data.g0;
      MetricGeometry sg = make_geometry(mj0, Signature::Riemannian);
      Field dphiS = grad(phi);
      const Grid& grb = data.g0.grid();
      const Field zb0 = Field::sigma(grb, 1);
      const Field zb1 = Field::sigma(grb, 1);
      const Field& b0in = data.b0 ? *data.b0 : zb0;
      const Field& b1in = data.b1 ? *data.b1 : zb1;
      out.B0 = *data.B0;
      out.b0 = mul_scalar(b0in, Ek);
      // B1~ = e^{k phi}[B1 + 2 kappa N(phi) B0 - kappa b0 ^ d phi]
      Field B1t = *data.B1;
      axpy(B1t, 2.0 * kap, mul_scalar(*data.B0, data.x0));
      axpy(B1t, -kap, wedge1(b0in, dphiS));
      out.B1 = mul_scalar(B1t, Ek);
      // b1~ = e^{2k phi}[b1 + 2 kappa N(phi) b0 + kappa i_{d phi} B0]
      Field b1t = b1in;
      axpy(b1t, 2.0 * kap, mul_scalar(b0in, data.x0));
      axpy(b1t, kap, interior_form(sg, dphiS, *data.B0));
      out.b1 = mul_scalar(b1t, E2k);
    }
    return out;
  }

  // Einstein -> string: algebraic inverses, in dependency order
  const Field& phi = *data.phi0;
  Field Ek = exp_scale(phi, kap);
  Field Emk = exp_scale(phi, -kap);
  Field E2k = exp_scale(phi, 2.0 * kap);
  Field Em2k = exp_scale(phi, -2.0 * kap);

  out.frame = Frame::String;
  out.phi0 = phi;
  out.x0 = mul_scalar(data.x0, Emk);          // x0 = e^{-k phi} phi1~
  out.g0 = mul_scalar(data.g0, E2k);
  Field kk = mul_scalar(data.k, Ek);
  axpy(kk, kap, mul_scalar(out.g0, out.x0));  // k = e^{k phi} k~ + kappa x0 g0
  out.k = kk;
  out.H0 = data.H0;
  out.h0 = mul_scalar(data.h0, Emk);
  out.xi0 = grad(phi);

  if (data.B0) {
    mj0.g = out.g0;  // string-frame slice metric raises indices here
    MetricGeometry sg = make_geometry(mj0, Signature::Riemannian);
    Field dphiS = grad(phi);
    const Grid& grb = data.g0.grid();
    const Field zb0 = Field::sigma(grb, 1);
    const Field zb1 = Field::sigma(grb, 1);
    const Field& b0in = data.b0 ? *data.b0 : zb0;
    const Field& b1in = data.b1 ? *data.b1 : zb1;
    out.B0 = *data.B0;
    out.b0 = mul_scalar(b0in, Emk);
    Field B1 = mul_scalar(*data.B1, Emk);
    axpy(B1, -2.0 * kap, mul_scalar(*out.B0, out.x0));
    axpy(B1, kap, wedge1(*out.b0, dphiS));
    out.B1 = B1;
    Field b1 = mul_scalar(b1in, Em2k);
    axpy(b1, -2.0 * kap, mul_scalar(*out.b0, out.x0));
    axpy(b1, -kap, interior_form(sg, dphiS, *out.B0));
    out.b1 = b1;
  }
  return out;
}

SliceData shift_einstein_data(const SliceData& data, double c) {
  if (data.frame != Frame::Einstein)
    throw std::runtime_error("shift_einstein_data: Einstein-frame data required");
  const double kap = kappa_of(data.g0.grid().d);
  SliceData out = data;
  out.g0 = scale(data.g0, std::exp(-2.0 * kap * c));
  out.k = scale(data.k, std::exp(-kap * c));
  out.h0 = scale(data.h0, std::exp(kap * c));
  Field p = *data.phi0;
  for (auto& v : p.raw()) v += c;
  out.phi0 = p;
  out.x0 = scale(data.x0, std::exp(kap * c));
  // B-sector slice components follow from B' = B and N' = e^{kappa c} N
  if (data.B0) out.B0 = *data.B0;
  if (data.b0) out.b0 = scale(*data.b0, std::exp(kap * c));
  if (data.B1) out.B1 = scale(*data.B1, std::exp(kap * c));
  if (data.b1) out.b1 = scale(*data.b1, std::exp(2.0 * kap * c));
  return out;
}

FrameTuple shift_einstein_tuple(const FrameTuple& t, double c) {
  if (t.frame != Frame::Einstein)
    throw std::runtime_error("shift_einstein_tuple: Einstein frame required");
  const double kap = kappa_of(t.g.g.dim());
  const double f = std::exp(-2.0 * kap * c);
  FrameTuple out = t;
  out.g.g = scale(t.g.g, f);
  if (t.g.dt) out.g.dt = scale(*t.g.dt, f);
  if (t.g.dtt) out.g.dtt = scale(*t.g.dtt, f);
  Field p = t.phi;
  for (auto& v : p.raw()) v += c;
  out.phi = p;
  return out;  // B (here H, dtH) and dt phi unchanged
}

}  // namespace gee
