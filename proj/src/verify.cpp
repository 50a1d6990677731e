#include "gee/verify.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "gee/frames.hpp"
#include "gee/initial_data.hpp"

namespace gee {
namespace checks {

namespace {

Field as_scalar(const Grid& gr, const Field& f) {
  Field s = Field::scalar(gr);
  s.raw() = f.raw();
  return s;
}

struct FieldJets {
  Field v, dt, dtt;
};

FieldJets sample3(const Grid& gr, const AnalyticTensor& a, double t) {
  FieldJets j;
  j.v = a.sample(gr, t);
  j.dt = a.sample_dt(gr, t);
  j.dtt = a.sample_dtt(gr, t);
  return j;
}

FieldJets sample3_scalar(const Grid& gr, const AnalyticTensor& a, double t) {
  FieldJets j = sample3(gr, a, t);
  j.v = as_scalar(gr, j.v);
  j.dt = as_scalar(gr, j.dt);
  j.dtt = as_scalar(gr, j.dtt);
  return j;
}

MetricGeometry full_geometry(const FieldJets& g) {
  MetricJet mj;
  mj.g = g.v;
  mj.dt = g.dt;
  mj.dtt = g.dtt;
  return make_geometry(mj, Signature::Lorentzian);
}

}  // namespace

SliceData random_einstein_data(const Grid& gr, unsigned seed, double amp) {
  std::mt19937 rng(seed);
  const int n = gr.d - 1;
  SliceData data;
  data.frame = Frame::Einstein;

  auto sigma_sym2 = [&](bool add_delta) {
    AnalyticTensor t = random_sym2(rng, gr, amp);
    Field s = t.sample(gr, 0.0);
    Field out = Field::sigma(gr, 2);
    for (int m = 0; m < n; ++m)
      for (int l = 0; l < n; ++l) {
        const double* src = s.comp((m + 1) * gr.d + (l + 1));
        double* dst = out.comp(m * n + l);
        for (long p = 0; p < gr.npts; ++p)
          dst[p] = (add_delta && m == l ? 1.0 : 0.0) + src[p];
      }
    return out;
  };
  data.g0 = sigma_sym2(true);
  data.k = sigma_sym2(false);

  auto sigma_form = [&](int deg) {
    AnalyticTensor f = random_form(rng, gr, deg, amp);
    return restrict_to_sigma(f.sample(gr, 0.0));
  };
  // H0 must be closed: take d^Sigma of a random 2-form potential
  data.H0 = exterior_derivative(sigma_form(2));
  data.h0 = sigma_form(2);

  AnalyticScalar p0 = random_scalar(rng, gr, amp, false);
  AnalyticScalar x0 = random_scalar(rng, gr, amp, false);
  Field phi0 = Field::sigma(gr, 0);
  Field x0f = Field::sigma(gr, 0);
  for (long p = 0; p < gr.npts; ++p) {
    const double x1 = gr.coord(p, 1);
    const double x2 = gr.n_active > 1 ? gr.coord(p, 2) : 0.0;
    phi0.at(0, p) = p0.value(0.0, x1, x2);
    x0f.at(0, p) = x0.value(0.0, x1, x2);
  }
  data.phi0 = phi0;
  data.x0 = x0f;
  data.xi0 = grad(phi0);

  data.B0 = sigma_form(2);
  data.b0 = sigma_form(1);
  data.B1 = sigma_form(2);
  data.b1 = sigma_form(1);
  return data;
}

MmsTuple random_tuple(const Grid& gr, unsigned seed, double amp) {
  std::mt19937 rng(seed);
  MmsTuple t;
  t.g = random_metric(rng, gr, amp);
  t.B = random_form(rng, gr, 2, amp);
  t.phi = AnalyticTensor(0, gr.d);
  t.phi.comp(0) = random_scalar(rng, gr, amp);
  return t;
}

double richat_oracle_err(const Grid& gr, unsigned seed) {
  SliceData data = random_einstein_data(gr, seed + 1000, 0.04);
  Background bg = make_background(data);
  std::mt19937 rng(seed);
  AnalyticTensor gt = random_metric(rng, gr, 0.05);
  FieldJets g = sample3(gr, gt, 0.3);
  MetricGeometry geo = full_geometry(g);

  Field lhs = ricci_hat(geo, bg);

  JetF gj{g.v, g.dt};
  JetF gij = jinvert_metric(g.v, geo.g_inv, g.dt);
  JetF dgj{grad(g.v, &g.dt), grad(g.dt, &g.dtt)};
  JetF D = jdeturck_covector(gj, gij, dgj, bg.geo.gamma);

  Field rhs = ricci(geo);
  Field nD = covariant_derivative(geo, D.v, &D.d);
  axpy(rhs, 1.0, symmetrize_pair(nD, 0, 1));
  return linf(sub(lhs, rhs));
}

double hodge_oracle_err(const Grid& gr, unsigned seed) {
  SliceData data = random_einstein_data(gr, seed + 2000, 0.04);
  Background bg = make_background(data);
  std::mt19937 rng(seed);
  AnalyticTensor gt = random_metric(rng, gr, 0.05);
  AnalyticTensor Bt = random_form(rng, gr, 2, 0.1);
  FieldJets g = sample3(gr, gt, 0.2);
  FieldJets B = sample3(gr, Bt, 0.2);
  MetricGeometry geo = full_geometry(g);

  Field dB = grad(B.v, &B.dt);
  Field ddB = second_partials(B.v, B.dt, B.dtt);
  Field lhs = hodge_hat(geo, bg, B.v, dB, ddB);

  Field dBform = exterior_derivative(B.v, &B.dt);
  Field dt_dBform = exterior_derivative(B.dt, &B.dtt);
  Field dstar = codifferential(geo, dBform, &dt_dBform);

  JetF gij = jinvert_metric(g.v, geo.g_inv, g.dt);
  JetF Bj{B.v, B.dt};
  JetF dBj{dB, grad(B.dt, &B.dtt)};
  JetF C = jmodified_codifferential(gij, Bj, dBj, bg.geo.gamma);
  Field dC = exterior_derivative(C.v, &C.d);

  Field rhs = scale(add(dstar, dC), -1.0);
  return linf(sub(lhs, rhs));
}

CrossFrame cross_frame_errs(const Grid& gr, unsigned seed) {
  const double kap = kappa_of(gr.d);
  std::mt19937 rng(seed);
  AnalyticTensor gt = random_metric(rng, gr, 0.04);
  AnalyticTensor Ht = random_form(rng, gr, 3, 0.1);
  AnalyticTensor pt(0, gr.d);
  pt.comp(0) = random_scalar(rng, gr, 0.05);

  const double t0 = 0.15;
  FieldJets g = sample3(gr, gt, t0);
  FieldJets H = sample3(gr, Ht, t0);
  FieldJets phi = sample3_scalar(gr, pt, t0);

  MetricGeometry geo_s = full_geometry(g);
  Field xi = grad(phi.v, &phi.dt);
  Field dtxi = grad(phi.dt, &phi.dtt);
  ResidualTriple rs = string_residuals(geo_s, H.v, H.dt, xi, dtxi);

  FrameTuple ft;
  ft.frame = Frame::String;
  ft.g = {g.v, g.dt, g.dtt};
  ft.H = H.v;
  ft.dtH = H.dt;
  ft.phi = phi.v;
  ft.dtphi = phi.dt;
  ft.dttphi = phi.dtt;
  ft.has_potential = true;
  FrameTuple te = conformal_convert(ft);
  MetricGeometry geo_t = make_geometry(te.g, Signature::Lorentzian);
  ResidualTriple rt =
      einstein_residuals(geo_t, H.v, H.dt, phi.v, phi.dt, phi.dtt);

  Field E2k = exp_scale(phi.v, 2.0 * kap);
  CrossFrame out;
  out.eH = linf(sub(rt.res_H, mul_scalar(rs.res_H, E2k)));
  out.ephi = linf(sub(rt.res_phi, mul_scalar(rs.res_phi, E2k)));
  Field rhs = rs.res_Rc;
  axpy(rhs, kap, mul_scalar(g.v, rs.res_phi));
  out.eRc = linf(sub(rt.res_Rc, rhs));

  // exact pointwise scaling H^{2, g~} = e^{4 kappa phi} H^{2, g}
  Field h2s = h_contractions(geo_s, H.v).h2;
  Field h2t = h_contractions(geo_t, H.v).h2;
  Field diff = sub(h2t, mul_scalar(h2s, exp_scale(phi.v, 4.0 * kap)));
  out.h2_scaling = linf(diff) / std::max(linf(h2t), 1e-300);

  const double scale_res =
      std::max({linf(rt.res_H), linf(rt.res_Rc), linf(rt.res_phi), 1.0});
  out.tol = 5.0 * std::pow(gr.h, gr.order) * scale_res;
  return out;
}

double deturck_shift_err(const Grid& gr, double c, unsigned seed) {
  const double kap = kappa_of(gr.d);
  SliceData data = random_einstein_data(gr, seed + 3000, 0.04);
  Background bg = make_background(data);
  std::mt19937 rng(seed);
  AnalyticTensor gt = random_metric(rng, gr, 0.05);
  FieldJets g = sample3(gr, gt, 0.1);
  MetricJet mj{g.v, g.dt, std::nullopt};
  MetricGeometry geo = make_geometry(mj, Signature::Lorentzian);
  Field D = deturck_covector(geo, bg);

  SliceData datap = shift_einstein_data(data, c);
  Background bgp = make_background(datap);
  const double f = std::exp(-2.0 * kap * c);
  MetricJet mjp{scale(g.v, f), scale(g.dt, f), std::nullopt};
  MetricGeometry geop = make_geometry(mjp, Signature::Lorentzian);
  Field Dp = deturck_covector(geop, bgp);
  return linf(sub(Dp, D)) / std::max(linf(D), 1e-300);
}

double lorenz_scale_err(const Grid& gr, double c, unsigned seed) {
  const double kap = kappa_of(gr.d);
  SliceData data = random_einstein_data(gr, seed + 4000, 0.04);
  Background bg = make_background(data);
  std::mt19937 rng(seed);
  AnalyticTensor gt = random_metric(rng, gr, 0.05);
  AnalyticTensor Bt = random_form(rng, gr, 2, 0.1);
  FieldJets g = sample3(gr, gt, 0.1);
  FieldJets B = sample3(gr, Bt, 0.1);

  MetricJet mj{g.v, g.dt, std::nullopt};
  MetricGeometry geo = make_geometry(mj, Signature::Lorentzian);
  Field C = modified_codifferential(geo, bg.geo, B.v, B.dt);

  SliceData datap = shift_einstein_data(data, c);
  Background bgp = make_background(datap);
  const double f = std::exp(-2.0 * kap * c);
  MetricJet mjp{scale(g.v, f), scale(g.dt, f), std::nullopt};
  MetricGeometry geop = make_geometry(mjp, Signature::Lorentzian);
  Field Cp = modified_codifferential(geop, bgp.geo, B.v, B.dt);

  Field want = scale(C, std::exp(2.0 * kap * c));
  return linf(sub(Cp, want)) / std::max(linf(C), 1e-300);
}

LemmaErr hypersurface_lemma_err(const Grid& gr, int degree, unsigned seed) {
  std::mt19937 rng(seed);
  AnalyticTensor gt = random_metric(rng, gr, 0.05);
  AnalyticTensor At = random_form(rng, gr, degree, 0.3);
  FieldJets g = sample3(gr, gt, 0.1);
  FieldJets A = sample3(gr, At, 0.1);

  MetricJet mj{g.v, g.dt, std::nullopt};
  MetricGeometry geo = make_geometry(mj, Signature::Lorentzian);
  SliceFrame fr = make_frame(geo);

  Field nA = covariant_derivative(geo, A.v, &A.dt);
  Field nNA = contract(fr.N_up, nA, {{0, 0}});
  FormDecomposition A0 = decompose_restrict(A.v, fr);
  FormDecomposition A1 = decompose_restrict(nNA, fr);

  RestrictedDerivatives lem = restricted_exterior_ops(
      A0.par, A0.perp, A1.par, A1.perp, fr.k, fr.sigma_geo);

  Field dA = exterior_derivative(A.v, &A.dt);
  FormDecomposition amb_d = decompose_restrict(dA, fr);
  Field codA = codifferential(geo, A.v, &A.dt);
  FormDecomposition amb_c = decompose_restrict(codA, fr);

  LemmaErr e;
  e.d_err = std::max(linf(sub(lem.d_par, amb_d.par)),
                     linf(sub(lem.d_perp, amb_d.perp)));
  e.cod_err = linf(sub(lem.cod_par, amb_c.par));
  if (lem.has_cod_perp)
    e.cod_err = std::max(e.cod_err, linf(sub(lem.cod_perp, amb_c.perp)));

  // [(nabla A)(N)]^par = D(A_perp) - A(k)
  Field lhs = normal_derivative_tangential(geo, fr, A.v, A.dt);
  Field rhs = covariant_derivative(fr.sigma_geo, A0.perp);
  Field k_endo = contract(fr.sigma_geo.g_inv, fr.k, {{1, 0}});
  axpy(rhs, -1.0, contract(k_endo, A0.par, {{0, 0}}));
  e.nder_err = linf(sub(lhs, rhs));
  return e;
}

JetNorms pulse_jet_norms(const Grid& gr, double lambda, double eps,
                         double amp_psi, double amp_phi, double x0_break) {
  SliceData data = dilaton_pulse_data(gr, lambda, eps, amp_psi, amp_phi);
  if (x0_break != 1.0) data.x0 = scale(data.x0, x0_break);
  Background bg = make_background(data);
  EvolutionState jet = setup_metric_dilaton(data, bg);
  setup_bfield(data, bg, jet);
  InitialGaugeCheck ch = initial_gauge_check(jet, bg);
  return {ch.deturck, ch.dt_deturck, ch.c_par, ch.dC};
}

double data_roundtrip_err(const Grid& gr, unsigned seed) {
  SliceData e0 = random_einstein_data(gr, seed, 0.05);
  SliceData s1 = transform_slice_data(e0);   // Einstein -> string
  SliceData e1 = transform_slice_data(s1);   // back
  auto cmp = [](const Field& a, const Field& b) {
    return linf(sub(a, b)) / std::max(linf(a), 1e-300);
  };
  double worst = 0.0;
  worst = std::max(worst, cmp(e0.g0, e1.g0));
  worst = std::max(worst, cmp(e0.k, e1.k));
  worst = std::max(worst, cmp(e0.H0, e1.H0));
  worst = std::max(worst, cmp(e0.h0, e1.h0));
  worst = std::max(worst, cmp(e0.x0, e1.x0));
  worst = std::max(worst, cmp(*e0.phi0, *e1.phi0));
  worst = std::max(worst, cmp(*e0.B0, *e1.B0));
  worst = std::max(worst, cmp(*e0.b0, *e1.b0));
  worst = std::max(worst, cmp(*e0.B1, *e1.B1));
  worst = std::max(worst, cmp(*e0.b1, *e1.b1));
  return worst;
}

double shift_commutation_err(const Grid& gr, double c) {
  const double kap = kappa_of(gr.d);
  SliceData data = dilaton_pulse_data(gr, 0.25, 0.05, 0.02, 0.05);
  Background bg = make_background(data);
  EvolutionState jet = setup_metric_dilaton(data, bg);
  setup_bfield(data, bg, jet);

  SliceData datap = shift_einstein_data(data, c);
  Background bgp = make_background(datap);
  EvolutionState jetp = setup_metric_dilaton(datap, bgp);
  setup_bfield(datap, bgp, jetp);

  // shift the original jet: g -> e^{-2 kappa c} g, phi -> phi + c
  const double f = std::exp(-2.0 * kap * c);
  EvolutionState shifted = jet;
  shifted.g = scale(jet.g, f);
  shifted.vg = scale(jet.vg, f);
  for (auto& v : shifted.phi.raw()) v += c;

  auto cmp = [](const Field& a, const Field& b) {
    return linf(sub(a, b)) / std::max(linf(a), 1e-300);
  };
  double worst = 0.0;
  worst = std::max(worst, cmp(jetp.g, shifted.g));
  worst = std::max(worst, cmp(jetp.vg, shifted.vg));
  worst = std::max(worst, linf(sub(jetp.B, shifted.B)));
  worst = std::max(worst, linf(sub(jetp.vB, shifted.vB)));
  worst = std::max(worst, cmp(jetp.phi, shifted.phi));
  worst = std::max(worst, cmp(jetp.vphi, shifted.vphi));
  return worst;
}

double mms_residual_err(const Grid& gr) {
  GridConfig gc;
  gc.dimension = gr.d;
  gc.n_active = gr.n_active;
  gc.points_per_axis = gr.npx;
  gc.axis_length = gr.length;
  gc.stencil_order = gr.order;
  ScenarioConfig cfg;
  cfg.name = "mms-wave";
  cfg.grid = gc;
  ScenarioSetup su = build_scenario(cfg);
  MmsTuple tup = mms_wave_tuple(su.grid, 0.03);
  Sources sa = mms_source_analytic(su.grid, su.bg, tup, 0.2);
  Sources sd = mms_source_discrete(su.grid, su.bg, tup, 0.2);
  return std::max({linf(sub(sd.sg, sa.sg)), linf(sub(sd.sB, sa.sB)),
                   linf(sub(sd.sphi, sa.sphi))});
}

double fit_order(double e_coarse, double e_fine) {
  return std::log2(e_coarse / std::max(e_fine, 1e-300));
}

double fit_order3(double e0, double e1, double e2) {
  // least-squares slope of log2(e) against refinement level; for equally
  // spaced levels {0,1,2} the middle point drops out of the slope
  (void)e1;
  const double y0 = std::log2(std::max(e0, 1e-300));
  const double y2 = std::log2(std::max(e2, 1e-300));
  return (y0 - y2) / 2.0;
}

}  // namespace checks

// ---- suites -----------------------------------------------------------------

namespace {

GridConfig base_grid(int d, int pts, int order = 4, int n_active = 1) {
  GridConfig gc;
  gc.dimension = d;
  gc.n_active = n_active;
  gc.points_per_axis = pts;
  gc.stencil_order = order;
  return gc;
}

void add(std::vector<CheckResult>& out, const std::string& name, bool pass,
         const std::string& detail) {
  out.push_back({name, pass, detail});
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), f, a, b, c);
  return buf;
}

}  // namespace

std::vector<std::string> suites() {
  return {"grid", "geometry", "forms", "hypersurface",
          "frames", "gauge", "initial-data", "all"};
}

std::vector<CheckResult> run_suite(const std::string& suite) {
  using namespace checks;
  std::vector<CheckResult> out;
  const bool all = suite == "all";

  if (all || suite == "grid") {
    Grid g32(base_grid(4, 32));
    Grid g64(base_grid(4, 64));
    auto derr = [](const Grid& gr) {
      Field f = Field::scalar(gr);
      const double k = 6.2831853071795864769 / gr.length;
      for (long p = 0; p < gr.npts; ++p) f.at(0, p) = std::sin(k * gr.coord(p, 1));
      Field df = partial_derivative(f, 1);
      double worst = 0.0;
      for (long p = 0; p < gr.npts; ++p)
        worst = std::max(worst,
                         std::fabs(df.at(0, p) - k * std::cos(k * gr.coord(p, 1))));
      return worst;
    };
    const double o = fit_order(derr(g32), derr(g64));
    add(out, "grid/stencil-order", std::fabs(o - 4.0) < 0.3,
        fmt("measured order %.2f (target 4)", o));
  }

  if (all || suite == "geometry") {
    Grid gr(base_grid(4, 32));
    Grid gf(base_grid(4, 64));
    auto static_bianchi = [](const Grid& g) {
      std::mt19937 rng(7);
      AnalyticTensor pert = random_sym2(rng, g, 0.05);
      Field gs = pert.sample(g, 0.0);
      for (long p = 0; p < g.npts; ++p) {
        gs.at(0, p) += -1.0;
        for (int i = 1; i < g.d; ++i) gs.at(i * g.d + i, p) += 1.0;
      }
      MetricJet mj{gs, std::nullopt, std::nullopt};
      MetricGeometry geo = make_geometry(mj, Signature::Lorentzian);
      Field G = einstein_tensor(geo);
      return linf(divergence_sym2(geo, G));
    };
    const double o = fit_order(static_bianchi(gr), static_bianchi(gf));
    add(out, "geometry/contracted-bianchi", std::fabs(o - 4.0) < 0.35,
        fmt("div G converges at order %.2f", o));
  }

  if (all || suite == "forms") {
    Grid gr(base_grid(4, 32));
    std::mt19937 rng(11);
    AnalyticTensor Bt = random_form(rng, gr, 2, 0.3);
    Field B = Bt.sample(gr, 0.0);
    Field dtB(gr, 2, gr.d, 0);
    Field dB = exterior_derivative(B, &dtB);
    Field dtdB(gr, 3, gr.d, 0);
    Field ddB = exterior_derivative(dB, &dtdB);
    add(out, "forms/dd-zero", linf(ddB) < 1e-11,
        fmt("|ddB|_inf = %.2e", linf(ddB)));
  }

  if (all || suite == "hypersurface") {
    Grid g32(base_grid(4, 32));
    Grid g64(base_grid(4, 64));
    for (int deg : {2, 3}) {
      LemmaErr e1 = hypersurface_lemma_err(g32, deg, 21);
      LemmaErr e2 = hypersurface_lemma_err(g64, deg, 21);
      const double od = fit_order(e1.d_err, e2.d_err);
      const double oc = fit_order(e1.cod_err, e2.cod_err);
      add(out, "hypersurface/lemma-deg" + std::to_string(deg),
          std::fabs(od - 4.0) < 0.35 && std::fabs(oc - 4.0) < 0.35,
          fmt("dA order %.2f, d*A order %.2f", od, oc));
    }
  }

  if (all || suite == "frames") {
    Grid gr(base_grid(4, 48));
    CrossFrame cf = cross_frame_errs(gr, 31);
    const double worst = std::max({cf.eH, cf.eRc, cf.ephi});
    add(out, "frames/cross-frame-residuals", worst < cf.tol,
        fmt("worst %.2e vs tol %.2e", worst, cf.tol));
    add(out, "frames/h2-scaling", cf.h2_scaling < 1e-12,
        fmt("relative %.2e", cf.h2_scaling));
  }

  if (all || suite == "gauge") {
    Grid g32(base_grid(4, 32));
    Grid g64(base_grid(4, 64));
    const double r1 = richat_oracle_err(g32, 41), r2 = richat_oracle_err(g64, 41);
    const double orc = fit_order(r1, r2);
    add(out, "gauge/richat-oracle", std::fabs(orc - 4.0) < 0.35,
        fmt("order %.2f", orc));
    const double h1 = hodge_oracle_err(g32, 43), h2 = hodge_oracle_err(g64, 43);
    const double oh = fit_order(h1, h2);
    add(out, "gauge/hodgehat-oracle", std::fabs(oh - 4.0) < 0.35,
        fmt("order %.2f", oh));
    const double ds = deturck_shift_err(g32, 0.3, 45);
    const double ls = lorenz_scale_err(g32, 0.3, 47);
    add(out, "gauge/frame-shift-invariance", ds < 1e-12 && ls < 1e-12,
        fmt("D %.2e, C %.2e", ds, ls));
  }

  if (all || suite == "initial-data") {
    Grid gr(base_grid(4, 32));
    SliceData lam = lambda_family_string(gr, 0.1);
    ConstraintResiduals cr = string_constraint_residuals(lam);
    const double worst = std::max({linf(cr.r1), linf(cr.r2), linf(cr.r3)});
    add(out, "initial-data/lambda-family", worst < 1e-10,
        fmt("residual %.2e", worst));
    JetNorms n1 = pulse_jet_norms(gr, 0.25, 0.05, 0.02, 0.05);
    Grid gf(base_grid(4, 64));
    JetNorms n2 = pulse_jet_norms(gf, 0.25, 0.05, 0.02, 0.05);
    const double oD = fit_order(n1.deturck, n2.deturck);
    const double odD = fit_order(n1.dt_deturck, n2.dt_deturck);
    add(out, "initial-data/jet-gauge-vanishing",
        std::fabs(oD - 4.0) < 0.5 && std::fabs(odD - 4.0) < 0.5,
        fmt("D order %.2f, dtD order %.2f", oD, odD));
  }

  if (out.empty())
    throw std::runtime_error("unknown verify suite: " + suite);
  return out;
}

}  // namespace gee
