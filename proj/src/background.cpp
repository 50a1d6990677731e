#include "gee/background.hpp"

#include <cmath>
#include <stdexcept>

#include "gee/frames.hpp"

namespace gee {

namespace {

// dginv_{m a b} = partial_m g^{ab} = -g^{ac} g^{bd} dg_{m c d}
Field dginv_field(const MetricGeometry& geo) {
  Field t = contract(geo.g_inv, geo.dg, {{1, 1}});   // (a, m, d)
  Field t2 = contract(t, geo.g_inv, {{2, 1}});       // (a, m, b)
  return scale(transpose(t2, {1, 0, 2}), -1.0);      // (m, a, b)
}

// K^a = g^{lk} Gamma^a_{lk} for an arbitrary Christoffel field
Field contracted_up(const MetricGeometry& geo, const Field& gamma) {
  return contract(geo.g_inv, gamma, {{0, 1}, {1, 2}});
}

// exterior derivative assembled from an explicit first-partial bundle
Field ext_from_bundle(const Field& dA, int p) {
  const int dim = dA.dim();
  const long n = dA.npts();
  Field out(dA.grid(), p + 1, dim, 0);
  std::vector<int> idx(p + 1, 0);
  for (long oc = 0; oc < out.ncomp(); ++oc) {
    long rem = oc;
    for (int s = p; s >= 0; --s) {
      idx[s] = static_cast<int>(rem % dim);
      rem /= dim;
    }
    double* op = out.comp(oc);
    double sign = 1.0;
    for (int j = 0; j <= p; ++j, sign = -sign) {
      long c = idx[j];
      for (int s = 0; s <= p; ++s)
        if (s != j) c = c * dim + idx[s];
      const double* dp = dA.comp(c);
      for (long q = 0; q < n; ++q) op[q] += sign * dp[q];
    }
  }
  return out;
}

}  // namespace

Field Background::Hbar(double t) const {
  Field H = H0_amb;
  axpy(H, 1.0, wedge1(dtform, heff_amb));
  axpy(H, t, dheff_amb);
  return H;
}

Field Background::dtHbar() const { return dheff_amb; }

Background make_background(const SliceData& data) {
  if (data.frame != Frame::Einstein || !data.has_potential())
    throw std::runtime_error("make_background: Einstein-frame data required");
  const Grid& gr = data.g0.grid();
  Background bg;
  bg.grid = gr;
  bg.kappa = kappa_of(gr.d);

  const Field& phi0 = *data.phi0;
  bg.gbar = extend_to_ambient(data.g0);
  Field Em2k = exp_scale(phi0, -2.0 * bg.kappa);
  for (long p = 0; p < gr.npts; ++p) bg.gbar.at(0, p) = -Em2k.at(0, p);

  MetricJet mj;
  mj.g = bg.gbar;
  bg.geo = make_geometry(mj, Signature::Lorentzian);
  bg.dgammabar = dgamma(bg.geo);
  Field Kbar = contracted_up(bg.geo, bg.geo.gamma);
  bg.Fbar = contract(bg.gbar, Kbar, {{1, 0}});

  bg.H0_amb = extend_to_ambient(data.H0);
  Field heff = mul_scalar(data.h0, exp_scale(phi0, -bg.kappa));
  bg.heff_amb = extend_to_ambient(heff);
  bg.dheff_amb = extend_to_ambient(exterior_derivative(heff));
  bg.dtform = Field::ambient(gr, 1);
  for (long p = 0; p < gr.npts; ++p) bg.dtform.at(0, p) = 1.0;
  return bg;
}

Field deturck_F(const MetricGeometry& geo, const Background& bg) {
  Field Kbar = contracted_up(geo, bg.geo.gamma);
  return contract(geo.g, Kbar, {{1, 0}});
}

Field deturck_covector(const MetricGeometry& geo, const Background& bg) {
  return sub(deturck_F(geo, bg), geo.gamma_c);
}

Field deturck_covector_via_A(const MetricGeometry& geo, const Background& bg) {
  Field A = sub(geo.gamma, bg.geo.gamma);
  Field K = contracted_up(geo, A);
  return scale(contract(geo.g, K, {{1, 0}}), -1.0);
}

JetF jdeturck_covector(const JetF& g, const JetF& g_inv, const JetF& dg,
                       const Field& gammabar) {
  // Gamma-jet from the metric jets
  JetF C = jscale(jadd(jtranspose(dg, {1, 0, 2}),
                       jsub(jtranspose(dg, {1, 2, 0}), dg)),
                  0.5);
  JetF gamma = jcontract(g_inv, C, {{1, 0}});
  JetF K = jcontract(g_inv, gamma, {{0, 1}, {1, 2}});
  JetF gamma_c = jcontract(g, K, {{1, 0}});
  JetF Kbar = jcontract(g_inv, JetF::constant(gammabar), {{0, 1}, {1, 2}});
  JetF F = jcontract(g, Kbar, {{1, 0}});
  return jsub(F, gamma_c);
}

Field richat_lower(const MetricGeometry& geo, const Background& bg) {
  // nabla_(mu F_nu)
  Field Kbar = contracted_up(geo, bg.geo.gamma);
  Field F = contract(geo.g, Kbar, {{1, 0}});
  Field dgi = dginv_field(geo);

  // dF_{mu nu} = dg_{mu nu l} K^l + g_{nu l} dK^l_mu
  Field dF = contract(geo.dg, Kbar, {{2, 0}});
  Field dK1 = contract(dgi, bg.geo.gamma, {{1, 1}, {2, 2}});        // (mu, l)
  Field dK2 = contract(geo.g_inv, bg.dgammabar, {{0, 2}, {1, 3}});  // (mu, l)
  Field dK = add(dK1, dK2);
  Field t2 = contract(geo.g, dK, {{1, 1}});  // (nu, mu)
  axpy(dF, 1.0, transpose(t2, {1, 0}));
  // nabla F = dF - Gamma^s_{mu nu} F_s
  Field nF = sub(dF, contract(geo.gamma, F, {{0, 0}}));
  Field out = symmetrize_pair(nF, 0, 1);

  // Gamma-Gamma terms with G_{abc} = g_{bm} Gamma^m_{ac}
  Field Glow = transpose(contract(geo.g, geo.gamma, {{1, 0}}), {1, 0, 2});
  Field P = contract(geo.g_inv, Glow, {{1, 0}});   // first index raised
  Field Q = contract(geo.g_inv, P, {{1, 1}});      // (second-raised, first-raised, mu)
  // term1_{mu nu} = Q_{d b mu} G_{b d nu}
  axpy(out, 1.0, contract(Q, Glow, {{0, 1}, {1, 0}}));
  // term2_{mu nu} = Q_{d b mu} G_{b nu d} ; term3 = transpose(term2)
  Field term2 = contract(Q, Glow, {{0, 2}, {1, 0}});
  axpy(out, 1.0, term2);
  axpy(out, 1.0, transpose(term2, {1, 0}));
  return out;
}

Field ricci_hat(const MetricGeometry& geo, const Background& bg) {
  if (!geo.has_ddg())
    throw std::runtime_error("ricci_hat: second time derivatives of g required");
  Field out = richat_lower(geo, bg);
  axpy(out, -0.5, contract(geo.g_inv, *geo.ddg, {{0, 0}, {1, 1}}));
  return out;
}

Field hodgehat_lower(const MetricGeometry& geo, const Background& bg,
                     const Field& B, const Field& dB) {
  const Field& gi = geo.g_inv;
  const Field& G = geo.gamma;
  const Field& Gb = bg.geo.gamma;
  const Field& dGb = bg.dgammabar;

  // Box_hat B = g^{lk} d_l d_k B + Psi, obtained by expanding
  // -d*(dB) - d(d*_{g,gbar} B) in coordinates. All pieces below are first
  // order in B and g; background second derivatives enter through dGammabar.
  Field dB3 = ext_from_bundle(dB, 2);  // (dB)_{l mu nu}

  // -Gamma^a dB3_{a mu nu} - g^{lk} Gamma^a_{k mu} dB3_{l a nu}
  //                        - g^{lk} Gamma^a_{k nu} dB3_{l mu a}
  Field Kdyn = contracted_up(geo, G);
  Field out = scale(contract(Kdyn, dB3, {{0, 0}}), -1.0);
  Field A = contract(gi, dB3, {{0, 0}});                  // (k, ., .)
  axpy(out, -1.0, contract(G, A, {{0, 1}, {1, 0}}));      // (mu, nu)
  Field X3 = contract(G, A, {{0, 2}, {1, 0}});            // (nu, mu)
  axpy(out, -1.0, transpose(X3, {1, 0}));

  auto add_antisym = [&out](const Field& X, double w) {
    axpy(out, w, X);
    axpy(out, -w, transpose(X, {1, 0}));
  };

  // + 2 (d_[mu g^{kl}) nablabar_k B_{l nu]}
  {
    Field t1 = contract(Gb, B, {{0, 0}});                 // (k, l, nu)
    Field t2 = transpose(contract(Gb, B, {{0, 1}}), {0, 2, 1});
    Field inner = sub(dB, add(t1, t2));                   // nablabar_k B_{l nu}
    Field dgi = dginv_field(geo);
    Field X = contract(dgi, inner, {{1, 0}, {2, 1}});     // (mu, nu)
    add_antisym(X, 1.0);
  }

  // - 2 g^{kl} d_[mu ( Gbar^a_{|kl|} B_{a nu]} + Gbar^a_{|k| nu]} B_{l a} )
  {
    Field Y = contract(gi, dGb, {{0, 2}, {1, 3}});        // (mu, a)
    Field X = contract(Y, B, {{1, 0}});                   // (mu, nu)
    Field Kbar = contracted_up(geo, Gb);
    axpy(X, 1.0, contract(Kbar, dB, {{0, 1}}));           // Kbar^a dB_{mu a nu}
    Field Z = contract(gi, dGb, {{0, 2}});                // (l, mu, a, nu)
    axpy(X, 1.0, contract(Z, B, {{0, 0}, {2, 1}}));       // (mu, nu)
    Field W = contract(gi, Gb, {{0, 1}});                 // (l, a, nu)
    Field X5d = contract(W, dB, {{0, 1}, {1, 2}});        // (nu, mu)
    axpy(X, 1.0, transpose(X5d, {1, 0}));
    add_antisym(X, -1.0);
  }
  return out;
}

Field hodge_hat(const MetricGeometry& geo, const Background& bg, const Field& B,
                const Field& dB, const Field& ddB) {
  Field out = hodgehat_lower(geo, bg, B, dB);
  axpy(out, 1.0, contract(geo.g_inv, ddB, {{0, 0}, {1, 1}}));
  return out;
}

SliceFields slice_fields_from_state(const EvolutionState& s) {
  SliceFields sf;
  sf.t = s.t;
  sf.g = s.g;
  sf.dg = grad(s.g, &s.vg);
  sf.B = s.B;
  sf.dB = grad(s.B, &s.vB);
  sf.phi = s.phi;
  sf.dphi = grad(s.phi, &s.vphi);
  return sf;
}

ModifiedRhs assemble_rhs(const SliceFields& sf, const Background& bg,
                         const MetricGeometry& geo) {
  const double kap = bg.kappa;
  ModifiedRhs out;

  Field dBform = ext_from_bundle(sf.dB, 2);
  Field Hb = bg.Hbar(sf.t);
  out.H = add(Hb, dBform);

  HContractions hc = h_contractions(geo, out.H);
  Field E4 = exp_scale(sf.phi, -4.0 * kap);
  Field e4h2 = mul_scalar(hc.norm2, E4);

  // metric block: g^{ab} dd g = 2 (Lambda - RHS_Ricci)
  Field rhs1 = scale(contract(sf.dphi, sf.dphi, {}), kap);
  axpy(rhs1, -kap / 6.0, mul_scalar(geo.g, e4h2));
  axpy(rhs1, 0.25, mul_scalar(hc.h2, E4));
  out.f_g = scale(sub(richat_lower(geo, bg), rhs1), 2.0);

  // B block: g^{ab} dd B = RHS_B - Psi
  Field dtHb = bg.dtHbar();
  Field rhs2 = codifferential(geo, Hb, &dtHb);
  axpy(rhs2, 4.0 * kap, interior_form(geo, sf.dphi, out.H));
  out.f_B = sub(rhs2, hodgehat_lower(geo, bg, sf.B, sf.dB));

  // dilaton block: g^{ab} dd phi = -e^{-4 k phi}/6 |H|^2 + Gamma^a d_a phi
  Field Kdyn = contract(geo.g_inv, geo.gamma, {{0, 1}, {1, 2}});
  out.f_phi = scale(e4h2, -1.0 / 6.0);
  axpy(out.f_phi, 1.0, contract(Kdyn, sf.dphi, {{0, 0}}));
  return out;
}

namespace {

//! a = (f - 2 g^{0i} d_i v - g^{ij} d_i d_j u) / g^{00}, componentwise.
Field principal_completion(const MetricGeometry& geo, const Field& u,
                           const Field& v, const Field& f) {
  const Grid& gr = u.grid();
  const int d = gr.d;
  Field acc = f;
  for (int i = 1; i <= gr.n_active; ++i) {
    Field div = partial_derivative(v, i);
    Field ddiu = partial_derivative(partial_derivative(u, i), i);
    const double* gi0i = geo.g_inv.comp(i);
    const double* giii = geo.g_inv.comp(static_cast<long>(i) * d + i);
    for (long c = 0; c < acc.ncomp(); ++c) {
      double* ap = acc.comp(c);
      const double* dv = div.comp(c);
      const double* dd = ddiu.comp(c);
      for (long p = 0; p < gr.npts; ++p)
        ap[p] -= 2.0 * gi0i[p] * dv[p] + giii[p] * dd[p];
    }
    for (int j = i + 1; j <= gr.n_active; ++j) {
      Field ddij = partial_derivative(partial_derivative(u, i), j);
      const double* giij = geo.g_inv.comp(static_cast<long>(i) * d + j);
      for (long c = 0; c < acc.ncomp(); ++c) {
        double* ap = acc.comp(c);
        const double* dd = ddij.comp(c);
        for (long p = 0; p < gr.npts; ++p) ap[p] -= 2.0 * giij[p] * dd[p];
      }
    }
  }
  const double* gi00 = geo.g_inv.comp(0);
  for (long c = 0; c < acc.ncomp(); ++c) {
    double* ap = acc.comp(c);
    for (long p = 0; p < gr.npts; ++p) ap[p] /= gi00[p];
  }
  return acc;
}

}  // namespace

StateRates modified_rhs(const EvolutionState& s, const Background& bg,
                        const Sources* src) {
  MetricJet mj;
  mj.g = s.g;
  mj.dt = s.vg;
  MetricGeometry geo = make_geometry(mj, Signature::Lorentzian);

  ModifiedRhs f = assemble_rhs(slice_fields_from_state(s), bg, geo);
  if (src) {
    axpy(f.f_g, 1.0, src->sg);
    axpy(f.f_B, 1.0, src->sB);
    axpy(f.f_phi, 1.0, src->sphi);
  }
  StateRates r;
  r.ag = principal_completion(geo, s.g, s.vg, f.f_g);
  r.aB = principal_completion(geo, s.B, s.vB, f.f_B);
  r.aphi = principal_completion(geo, s.phi, s.vphi, f.f_phi);
  if (!finite(r.ag) || !finite(r.aB) || !finite(r.aphi))
    throw std::runtime_error("modified_rhs: non-finite right-hand side");
  return r;
}

}  // namespace gee
