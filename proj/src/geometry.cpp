#include "gee/geometry.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "gee/smallmat.hpp"

namespace gee {

Field trace_slots(const Field& a, int s1, int s2) {
  if (s1 > s2) std::swap(s1, s2);
  const int rank = a.rank();
  const int dim = a.dim();
  if (s1 == s2 || s2 >= rank) throw std::runtime_error("trace_slots: bad slots");
  Field out(a.grid(), rank - 2, dim, a.offset());
  const long n = a.npts();
  std::vector<int> oidx(std::max(rank - 2, 1), 0);
  std::vector<int> aidx(rank, 0);
  for (long oc = 0; oc < out.ncomp(); ++oc) {
    long rem = oc;
    for (int s = rank - 3; s >= 0; --s) {
      oidx[s] = static_cast<int>(rem % dim);
      rem /= dim;
    }
    // scatter free indices into aidx skipping s1, s2
    int f = 0;
    for (int s = 0; s < rank; ++s)
      if (s != s1 && s != s2) aidx[s] = oidx[f++];
    double* op = out.comp(oc);
    for (int k = 0; k < dim; ++k) {
      aidx[s1] = aidx[s2] = k;
      long ca = 0;
      for (int s = 0; s < rank; ++s) ca = ca * dim + aidx[s];
      const double* ap = a.comp(ca);
      for (long p = 0; p < n; ++p) op[p] += ap[p];
    }
  }
  return out;
}

Field metric_trace(const MetricGeometry& geo, const Field& T, int s1, int s2) {
  return contract(geo.g_inv, T, {{0, s1}, {1, s2}});
}

Field invert_metric(const Field& g) {
  const int dim = g.dim();
  Field inv(g.grid(), 2, dim, g.offset());
  const long n = g.npts();
  std::vector<double> m(dim * dim), mi(dim * dim);
  for (long p = 0; p < n; ++p) {
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) m[i * dim + j] = g.at(i * dim + j, p);
    if (!invert(m.data(), mi.data(), dim))
      throw std::runtime_error("invert_metric: singular metric component matrix");
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) inv.at(i * dim + j, p) = mi[i * dim + j];
  }
  return inv;
}

static void signature_fail(const char* what, long p, double val) {
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "signature violation: %s at point %ld (value %.6e); metric "
                "left the canonical Lorentz class",
                what, p, val);
  throw std::runtime_error(buf);
}

bool is_lorentzian(const Field& g, double eps) {
  const int dim = g.dim();
  const int ns = dim - 1;
  std::vector<double> sp(ns * ns);
  for (long p = 0; p < g.npts(); ++p) {
    if (!(g.at(0, p) < -eps)) return false;
    for (int i = 0; i < ns; ++i)
      for (int j = 0; j < ns; ++j)
        sp[i * ns + j] = g.at((i + 1) * dim + (j + 1), p);
    if (!positive_definite(sp.data(), ns, eps)) return false;
  }
  return true;
}

void check_lorentzian(const Field& g, double eps) {
  const int dim = g.dim();
  const int ns = dim - 1;
  std::vector<double> sp(ns * ns);
  for (long p = 0; p < g.npts(); ++p) {
    const double g00 = g.at(0, p);
    if (!(g00 < -eps)) signature_fail("g_00 not below -eps", p, g00);
    for (int i = 0; i < ns; ++i)
      for (int j = 0; j < ns; ++j)
        sp[i * ns + j] = g.at((i + 1) * dim + (j + 1), p);
    if (!positive_definite(sp.data(), ns, eps)) {
      std::vector<double> eig(ns);
      sym_eigenvalues(sp.data(), eig.data(), ns);
      signature_fail("spatial block not positive definite", p, eig[0]);
    }
  }
}

void check_riemannian(const Field& g, double eps) {
  const int dim = g.dim();
  std::vector<double> m(dim * dim);
  for (long p = 0; p < g.npts(); ++p) {
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) m[i * dim + j] = g.at(i * dim + j, p);
    if (!positive_definite(m.data(), dim, eps))
      signature_fail("metric not positive definite", p, 0.0);
  }
}

SignatureExtrema signature_extrema(const Field& g) {
  const int dim = g.dim();
  const int ns = dim - 1;
  SignatureExtrema ex;
  ex.g00_min = 1e300;
  ex.g00_max = -1e300;
  ex.spatial_eig_min = 1e300;
  std::vector<double> sp(ns * ns), eig(ns);
  for (long p = 0; p < g.npts(); ++p) {
    const double g00 = g.at(0, p);
    ex.g00_min = std::min(ex.g00_min, g00);
    ex.g00_max = std::max(ex.g00_max, g00);
    for (int i = 0; i < ns; ++i)
      for (int j = 0; j < ns; ++j)
        sp[i * ns + j] = g.at((i + 1) * dim + (j + 1), p);
    sym_eigenvalues(sp.data(), eig.data(), ns);
    ex.spatial_eig_min = std::min(ex.spatial_eig_min, eig[0]);
  }
  return ex;
}

MetricGeometry make_geometry_from_derivs(const Field& g, const Field& dg,
                                         std::optional<Field> ddg,
                                         Signature sig, bool check_signature) {
  MetricGeometry geo;
  geo.grid = g.grid();
  geo.dim = g.dim();
  geo.offset = g.offset();
  geo.sig = sig;
  geo.g = g;
  geo.dg = dg;
  geo.ddg = std::move(ddg);

  if (symmetry_violation(g, 0, 1) > 1e-12)
    throw std::runtime_error("make_geometry: metric not symmetric");
  if (check_signature) {
    if (sig == Signature::Lorentzian)
      check_lorentzian(g);
    else
      check_riemannian(g);
  }
  geo.g_inv = invert_metric(g);

  // C_{sig mu nu} = 1/2 (dg_{mu sig nu} + dg_{nu sig mu} - dg_{sig mu nu})
  Field C = scale(add(transpose(geo.dg, {1, 0, 2}),
                      sub(transpose(geo.dg, {1, 2, 0}), geo.dg)),
                  0.5);
  geo.gamma = contract(geo.g_inv, C, {{1, 0}});

  // Gamma_mu = g_{mu nu} g^{ab} Gamma^nu_{ab}
  Field K = contract(geo.g_inv, geo.gamma, {{0, 1}, {1, 2}});
  geo.gamma_c = contract(geo.g, K, {{1, 0}});
  return geo;
}

MetricGeometry make_geometry(const MetricJet& mj, Signature sig,
                             bool check_signature) {
  const bool ambient = mj.g.offset() == 0;
  Field dg;
  std::optional<Field> ddg;
  if (ambient) {
    const Field zero(mj.g.grid(), 2, mj.g.dim(), 0);
    const Field& dt = mj.dt ? *mj.dt : zero;
    dg = grad(mj.g, &dt);
    // second partials available when dtt is known (absent dt means static)
    if (mj.dtt || !mj.dt) {
      const Field& dtt = mj.dtt ? *mj.dtt : zero;
      Field ddt = grad(dt, &dtt);  // d_beta d_t g
      ddg = grad(dg, &ddt);
    }
  } else {
    dg = grad(mj.g);
    ddg = grad(dg);
  }
  return make_geometry_from_derivs(mj.g, dg, std::move(ddg), sig,
                                   check_signature);
}

Field dgamma(const MetricGeometry& geo) {
  if (!geo.has_ddg())
    throw std::runtime_error(
        "dgamma: second time derivatives of the metric are required");
  const Field& ddg = *geo.ddg;
  // dC_{a sig mu nu} = 1/2 (ddg_{a mu sig nu} + ddg_{a nu sig mu} - ddg)
  Field dC = scale(add(transpose(ddg, {0, 2, 1, 3}),
                       sub(transpose(ddg, {0, 2, 3, 1}), ddg)),
                   0.5);
  // dginv_{a lam sig} = -g^{lam m} g^{sig n} dg_{a m n}
  Field t = contract(geo.g_inv, geo.dg, {{1, 1}});          // (lam, a, n)
  Field dginv = contract(t, geo.g_inv, {{2, 1}});           // (lam, a, sig)
  dginv = scale(transpose(dginv, {1, 0, 2}), -1.0);         // (a, lam, sig)

  Field C = scale(add(transpose(geo.dg, {1, 0, 2}),
                      sub(transpose(geo.dg, {1, 2, 0}), geo.dg)),
                  0.5);
  Field dG = contract(dginv, C, {{2, 0}});                  // (a, lam, mu, nu)
  Field dG2 = contract(geo.g_inv, dC, {{1, 1}});            // (lam, a, mu, nu)
  axpy(dG, 1.0, transpose(dG2, {1, 0, 2, 3}));
  return dG;
}

Field ricci(const MetricGeometry& geo) {
  Field dG = dgamma(geo);
  // Rc_{mu nu} = d_lam Gamma^lam_{mu nu} - d_nu Gamma^lam_{mu lam}
  //            + Gamma^lam_{lam sig} Gamma^sig_{mu nu}
  //            - Gamma^lam_{nu sig} Gamma^sig_{mu lam}
  Field A = trace_slots(dG, 0, 1);
  Field B = transpose(trace_slots(dG, 1, 3), {1, 0});
  Field gtr = trace_slots(geo.gamma, 0, 1);  // Gamma^lam_{lam sig}
  Field C1 = contract(gtr, geo.gamma, {{0, 0}});
  Field C2t = contract(geo.gamma, geo.gamma, {{0, 2}, {2, 0}});  // (nu, mu)
  Field C2 = transpose(C2t, {1, 0});
  Field rc = sub(add(A, C1), add(B, C2));
  return symmetrize_pair(rc, 0, 1);  // symmetric up to roundoff already
}

Field scalar_curvature(const MetricGeometry& geo, const Field& rc) {
  return contract(geo.g_inv, rc, {{0, 0}, {1, 1}});
}

Field covariant_derivative(const MetricGeometry& geo, const Field& T,
                           const Field* dtT) {
  if (T.rank() > 3)
    throw std::runtime_error(
        "covariant_derivative: supported tensor valence capped at total rank 4");
  const bool ambient = geo.offset == 0;
  Field dT = ambient ? grad(T, dtT) : grad(T);
  const int rank = T.rank();
  const int dim = T.dim();
  const long n = T.npts();
  Field out = dT;
  // subtract Gamma^sig_{lam mu_i} T_{...sig...}
  std::vector<int> idx(rank + 1, 0);
  for (long oc = 0; oc < out.ncomp(); ++oc) {
    long rem = oc;
    for (int s = rank; s >= 0; --s) {
      idx[s] = static_cast<int>(rem % dim);
      rem /= dim;
    }
    double* op = out.comp(oc);
    const int lam = idx[0];
    for (int slot = 1; slot <= rank; ++slot) {
      const int mu = idx[slot];
      for (int sig = 0; sig < dim; ++sig) {
        const long cg = (static_cast<long>(sig) * dim + lam) * dim + mu;
        long ct = 0;
        for (int s = 1; s <= rank; ++s) ct = ct * dim + (s == slot ? sig : idx[s]);
        const double* gp = geo.gamma.comp(cg);
        const double* tp = T.comp(ct);
        for (long p = 0; p < n; ++p) op[p] -= gp[p] * tp[p];
      }
    }
  }
  return out;
}

Field hessian_scalar(const MetricGeometry& geo, const Field& dphi,
                     const Field& ddphi) {
  Field out = ddphi;
  axpy(out, -1.0, contract(geo.gamma, dphi, {{0, 0}}));
  return out;
}

Field box_scalar(const MetricGeometry& geo, const Field& dphi,
                 const Field& ddphi) {
  Field h = hessian_scalar(geo, dphi, ddphi);
  return contract(geo.g_inv, h, {{0, 0}, {1, 1}});
}

Field divergence_sym2(const MetricGeometry& geo, const Field& T,
                      const Field* dtT) {
  Field nt = covariant_derivative(geo, T, dtT);
  return contract(geo.g_inv, nt, {{0, 0}, {1, 1}});
}

Field einstein_tensor(const MetricGeometry& geo) {
  Field rc = ricci(geo);
  Field sc = scalar_curvature(geo, rc);
  Field out = rc;
  axpy(out, -0.5, mul_scalar(geo.g, sc));
  return out;
}

}  // namespace gee
