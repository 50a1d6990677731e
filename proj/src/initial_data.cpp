#include "gee/initial_data.hpp"

#include <cmath>
#include <stdexcept>

#include "gee/frames.hpp"
#include "gee/hypersurface.hpp"

namespace gee {

namespace {

MetricGeometry sigma_geometry(const Field& g0) {
  MetricJet mj;
  mj.g = g0;
  return make_geometry(mj, Signature::Riemannian);
}

Field as_ambient_scalar(const Field& s) {
  Field out = Field::scalar(s.grid());
  out.raw() = s.raw();
  return out;
}

}  // namespace

ConstraintResiduals string_constraint_residuals(const SliceData& data) {
  if (data.frame != Frame::String)
    throw std::runtime_error("string_constraint_residuals: string-frame data required");
  MetricGeometry sg = sigma_geometry(data.g0);
  Field rc = ricci(sg);
  Field sc = scalar_curvature(sg, rc);
  Field trk = metric_trace(sg, data.k);

  ConstraintResiduals r;
  r.r1 = sc;
  axpy(r.r1, 1.0, mul_scalar(trk, trk));
  axpy(r.r1, -1.0, form_norm2(sg, data.k));
  axpy(r.r1, -1.0 / 12.0, form_norm2(sg, data.H0));
  axpy(r.r1, -0.25, form_norm2(sg, data.h0));
  axpy(r.r1, -2.0, codifferential(sg, data.xi0));
  axpy(r.r1, -2.0, mul_scalar(trk, data.x0));
  axpy(r.r1, -1.0, form_norm2(sg, data.xi0));
  axpy(r.r1, 1.0, mul_scalar(data.x0, data.x0));

  r.r2 = divergence_sym2(sg, data.k);
  axpy(r.r2, -1.0, grad(trk));
  axpy(r.r2, -0.25, c_contraction(sg, data.h0, data.H0));
  axpy(r.r2, 1.0, grad(data.x0));
  axpy(r.r2, -1.0, interior_form(sg, data.xi0, data.k));

  r.r3 = codifferential(sg, data.h0);
  axpy(r.r3, 1.0, interior_form(sg, data.xi0, data.h0));
  return r;
}

ConstraintResiduals einstein_constraint_residuals(const SliceData& data) {
  if (data.frame != Frame::Einstein || !data.has_potential())
    throw std::runtime_error(
        "einstein_constraint_residuals: Einstein-frame data required");
  const double kap = kappa_of(data.g0.grid().d);
  MetricGeometry sg = sigma_geometry(data.g0);
  Field rc = ricci(sg);
  Field sc = scalar_curvature(sg, rc);
  Field trk = metric_trace(sg, data.k);
  Field dphi = grad(*data.phi0);  // d^Sigma phi0
  Field E4 = exp_scale(*data.phi0, -4.0 * kap);

  ConstraintResiduals r;
  r.r1 = sc;
  axpy(r.r1, 1.0, mul_scalar(trk, trk));
  axpy(r.r1, -1.0, form_norm2(sg, data.k));
  axpy(r.r1, -kap, form_norm2(sg, dphi));
  axpy(r.r1, -kap, mul_scalar(data.x0, data.x0));
  Field hterms = form_norm2(sg, data.H0);
  axpy(hterms, 3.0, form_norm2(sg, data.h0));
  axpy(r.r1, -1.0 / 12.0, mul_scalar(hterms, E4));

  r.r2 = divergence_sym2(sg, data.k);
  axpy(r.r2, -1.0, grad(trk));
  axpy(r.r2, -kap, mul_scalar(dphi, data.x0));
  axpy(r.r2, -0.25, mul_scalar(c_contraction(sg, data.h0, data.H0), E4));

  r.r3 = codifferential(sg, data.h0);
  axpy(r.r3, 4.0 * kap, interior_form(sg, dphi, data.h0));
  return r;
}

double constraint_violation(const SliceData& data) {
  ConstraintResiduals r = data.frame == Frame::String
                              ? string_constraint_residuals(data)
                              : einstein_constraint_residuals(data);
  const Grid& gr = data.g0.grid();
  const double scale_fields =
      std::max({linf(data.k), linf(data.H0), linf(data.h0), linf(data.x0), 1.0});
  const double thresh =
      std::max(1e-10, 10.0 * std::pow(gr.h, gr.order) * scale_fields);
  const double worst = std::max({linf(r.r1), linf(r.r2), linf(r.r3)});
  return worst / thresh;
}

EvolutionState setup_metric_dilaton(const SliceData& data, const Background& bg) {
  if (data.frame != Frame::Einstein || !data.has_potential())
    throw std::runtime_error("setup_metric_dilaton: Einstein-frame data required");
  const Grid& gr = data.g0.grid();
  const int d = gr.d;
  const double kap = bg.kappa;
  const Field& phi0 = *data.phi0;

  EvolutionState jet;
  jet.t = 0.0;
  jet.g = bg.gbar;  // g|_Sigma agrees with the background by construction
  jet.vg = Field::ambient(gr, 2);
  jet.B = Field::ambient(gr, 2);
  jet.vB = Field::ambient(gr, 2);
  jet.phi = as_ambient_scalar(phi0);
  jet.vphi = as_ambient_scalar(mul_scalar(data.x0, exp_scale(phi0, -kap)));

  MetricGeometry sg = sigma_geometry(data.g0);
  Field trk = metric_trace(sg, data.k);
  Field dphiS = grad(phi0);  // sigma 1-form

  Field Emk = exp_scale(phi0, -kap);
  Field Em2k = exp_scale(phi0, -2.0 * kap);
  const int n = d - 1;
  for (long p = 0; p < gr.npts; ++p) {
    const double emk = Emk.at(0, p);
    const double em2k = Em2k.at(0, p);
    // dt g_mn = 2 e^{-k phi0} k_mn
    for (int m = 0; m < n; ++m)
      for (int l = 0; l < n; ++l)
        jet.vg.at((m + 1) * d + (l + 1), p) = 2.0 * emk * data.k.at(m * n + l, p);
    // dt g_00 = -2 e^{-2k phi0} [F_0 + e^{-k phi0} tr k]
    jet.vg.at(0, p) =
        -2.0 * em2k * (bg.Fbar.at(0, p) + emk * trk.at(0, p));
    // dt g_0k = e^{-2k phi0} [GammaS_k - F_k + kappa d_k phi0]
    for (int m = 0; m < n; ++m) {
      const double v = em2k * (sg.gamma_c.at(m, p) - bg.Fbar.at(m + 1, p) +
                               kap * dphiS.at(m, p));
      jet.vg.at(0 * d + (m + 1), p) = v;
      jet.vg.at((m + 1) * d + 0, p) = v;
    }
  }
  return jet;
}

void setup_bfield(const SliceData& data, const Background& bg,
                  EvolutionState& jet) {
  const Grid& gr = data.g0.grid();
  const int d = gr.d;
  const int n = d - 1;

  Field B0 = data.B0 ? *data.B0 : Field::sigma(gr, 2);
  Field B1 = data.B1 ? *data.B1 : Field::sigma(gr, 2);
  if (data.b0 && linf(*data.b0) > 0.0)
    throw std::runtime_error("setup_bfield: b0 must vanish (B(N) = 0 initially)");

  jet.B = extend_to_ambient(B0);

  MetricJet mj;
  mj.g = jet.g;
  mj.dt = jet.vg;
  MetricGeometry geo = make_geometry(mj, Signature::Lorentzian);
  SliceFrame fr = make_frame(geo);

  // dt B from nabla_N B = ext(B1) - N^flat ^ ext(b1):
  //   dt B_{mu nu} = lapse^{-1}... with N = e^{k phi0} dt on the adapted slice,
  //   dt B = (1/N^0) (nabla_N B)_{mu nu} + Gamma^l_{0 mu} B_{l nu}
  //        + Gamma^l_{0 nu} B_{mu l}
  auto assemble_vB = [&](const Field& b1) {
    Field nNB = extend_to_ambient(B1);
    axpy(nNB, -1.0, wedge1(fr.N_flat, extend_to_ambient(b1)));
    Field vB(gr, 2, d, 0);
    for (long p = 0; p < gr.npts; ++p) {
      const double inv_n0 = 1.0 / fr.N_up.at(0, p);
      for (int mu = 0; mu < d; ++mu)
        for (int nu = 0; nu < d; ++nu) {
          double s = inv_n0 * nNB.at(mu * d + nu, p);
          for (int l = 0; l < d; ++l) {
            s += geo.gamma.at((l * d + 0) * d + mu, p) * jet.B.at(l * d + nu, p);
            s += geo.gamma.at((l * d + 0) * d + nu, p) * jet.B.at(mu * d + l, p);
          }
          vB.at(mu * d + nu, p) = s;
        }
    }
    return vB;
  };

  Field b1_zero = Field::sigma(gr, 1);
  Field vB0 = assemble_vB(b1_zero);
  Field C0 = modified_codifferential(geo, bg.geo, jet.B, vB0);
  Field b1(gr, 1, n, 1);
  for (long p = 0; p < gr.npts; ++p)
    for (int m = 0; m < n; ++m) b1.at(m, p) = -C0.at(m + 1, p);
  jet.vB = assemble_vB(b1);
}

InitialGaugeCheck initial_gauge_check(const EvolutionState& jet,
                                      const Background& bg) {
  const Grid& gr = bg.grid;
  StateRates rates = modified_rhs(jet, bg);

  MetricJet mj;
  mj.g = jet.g;
  mj.dt = jet.vg;
  MetricGeometry geo = make_geometry(mj, Signature::Lorentzian);

  JetF gj{jet.g, jet.vg};
  JetF gij = jinvert_metric(jet.g, geo.g_inv, jet.vg);
  JetF dgj{grad(jet.g, &jet.vg), grad(jet.vg, &rates.ag)};
  JetF D = jdeturck_covector(gj, gij, dgj, bg.geo.gamma);

  JetF Bj{jet.B, jet.vB};
  JetF dBj{grad(jet.B, &jet.vB), grad(jet.vB, &rates.aB)};
  JetF C = jmodified_codifferential(gij, Bj, dBj, bg.geo.gamma);
  Field dC = exterior_derivative(C.v, &C.d);

  InitialGaugeCheck out;
  out.deturck = linf(D.v);
  out.dt_deturck = linf(D.d);
  out.c_par = linf(restrict_to_sigma(C.v));
  out.dC = linf(dC);
  const double scale_fields = std::max(1.0, linf(jet.vg));
  out.threshold = std::max(1e-11, 100.0 * std::pow(gr.h, gr.order) * scale_fields);
  out.pass = out.deturck < out.threshold && out.dt_deturck < out.threshold &&
             out.c_par < out.threshold && out.dC < out.threshold;
  return out;
}

}  // namespace gee
