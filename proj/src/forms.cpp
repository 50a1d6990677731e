#include "gee/forms.hpp"

#include <cmath>
#include <stdexcept>

namespace gee {

Field as_form(const Field& a, double tol) {
  if (a.rank() == 0) return a;
  if (antisymmetry_violation(a) > tol)
    throw std::runtime_error("as_form: field is not antisymmetric");
  return antisymmetrize_all(a);
}

Field exterior_derivative(const Field& A, const Field* dtA) {
  const int p = A.rank();
  if (p > 3) throw std::runtime_error("exterior_derivative: degree capped at 3");
  const bool ambient = A.offset() == 0;
  if (ambient && dtA == nullptr)
    throw std::runtime_error(
        "exterior_derivative: ambient form needs slice time-derivative data");
  Field dA = ambient ? grad(A, dtA) : grad(A);
  const int dim = A.dim();
  const long n = A.npts();
  Field out(A.grid(), p + 1, dim, A.offset());
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
      // component of dA: (mu_j ; remaining indices in order)
      long c = idx[j];
      for (int s = 0; s <= p; ++s)
        if (s != j) c = c * dim + idx[s];
      const double* dp = dA.comp(c);
      for (long q = 0; q < n; ++q) op[q] += sign * dp[q];
    }
  }
  return out;
}

Field codifferential(const MetricGeometry& geo, const Field& A,
                     const Field* dtA) {
  if (A.rank() < 1) throw std::runtime_error("codifferential: degree >= 1");
  Field nA = covariant_derivative(geo, A, dtA);
  return scale(contract(geo.g_inv, nA, {{0, 0}, {1, 1}}), -1.0);
}

Field interior_form(const MetricGeometry& geo, const Field& xi, const Field& A) {
  Field xi_up = contract(geo.g_inv, xi, {{1, 0}});
  return interior_vec(xi_up, A);
}

Field interior_vec(const Field& X_up, const Field& A) {
  if (A.rank() < 1) throw std::runtime_error("interior_vec: degree >= 1");
  return contract(X_up, A, {{0, 0}});
}

Field endo_dot_form(const Field& k_endo, const Field& A) {
  const int p = A.rank();
  const int dim = A.dim();
  const long n = A.npts();
  Field out(A.grid(), p, dim, A.offset());
  std::vector<int> idx(std::max(p, 1), 0);
  for (long oc = 0; oc < out.ncomp(); ++oc) {
    long rem = oc;
    for (int s = p - 1; s >= 0; --s) {
      idx[s] = static_cast<int>(rem % dim);
      rem /= dim;
    }
    double* op = out.comp(oc);
    for (int s = 0; s < p; ++s) {
      const int i_s = idx[s];
      for (int j = 0; j < dim; ++j) {
        long ca = 0;
        for (int r = 0; r < p; ++r) ca = ca * dim + (r == s ? j : idx[r]);
        const double* kp = k_endo.comp(static_cast<long>(j) * dim + i_s);
        const double* ap = A.comp(ca);
        for (long q = 0; q < n; ++q) op[q] -= kp[q] * ap[q];
      }
    }
  }
  return out;
}

Field k_dot_form(const MetricGeometry& geo, const Field& k, const Field& A) {
  Field k_endo = contract(geo.g_inv, k, {{1, 0}});  // k^j_i, slots (up, low)
  return endo_dot_form(k_endo, A);
}

Field c_contraction(const MetricGeometry& geo, const Field& h, const Field& H) {
  Field D = contract(geo.g_inv, H, {{1, 0}});   // (k up, n, i)
  Field E = contract(geo.g_inv, D, {{1, 1}});   // (m up, k up, i)
  return contract(h, E, {{0, 1}, {1, 0}});      // C_i
}

HContractions h_contractions(const MetricGeometry& geo, const Field& H) {
  Field t = contract(geo.g_inv, H, {{1, 1}});            // (k, mu, r)
  t = transpose(t, {1, 0, 2});                           // (mu, k, r)
  Field t2 = contract(geo.g_inv, t, {{1, 2}});           // (r, mu, k)
  Field Hup12 = transpose(t2, {1, 2, 0});                // (mu, k up, r up)
  HContractions out;
  out.h2 = contract(H, Hup12, {{1, 1}, {2, 2}});
  Field Hup = contract(geo.g_inv, Hup12, {{1, 0}});      // all slots raised
  out.norm2 = contract(H, Hup, {{0, 0}, {1, 1}, {2, 2}});
  return out;
}

Field form_norm2(const MetricGeometry& geo, const Field& A) {
  const int p = A.rank();
  if (p == 0) return contract(A, A, {});
  Field up = A;
  for (int s = 0; s < p; ++s) {
    up = contract(geo.g_inv, up, {{1, s}});
    // raised slot lands in front; rotate it back to position s
    std::vector<int> perm(p);
    for (int r = 0; r < p; ++r) perm[r] = r < s ? r + 1 : (r == s ? 0 : r);
    up = transpose(up, perm);
  }
  std::vector<std::pair<int, int>> pairs;
  for (int s = 0; s < p; ++s) pairs.push_back({s, s});
  return contract(A, up, pairs);
}

Field modified_codifferential(const MetricGeometry& geo,
                              const MetricGeometry& bg_geo, const Field& B,
                              const Field& dtB) {
  Field nbB = covariant_derivative(bg_geo, B, &dtB);
  return scale(contract(geo.g_inv, nbB, {{0, 0}, {1, 1}}), -1.0);
}

Field modified_codifferential_decomposed(const MetricGeometry& geo,
                                         const MetricGeometry& bg_geo,
                                         const Field& B, const Field& dtB) {
  Field out = codifferential(geo, B, &dtB);
  // A^mu_{k nu} = Gamma - Gammabar ; D_nu = -g_{nu mu} g^{ab} A^mu_{ab}
  Field A = sub(geo.gamma, bg_geo.gamma);
  Field K = contract(geo.g_inv, A, {{0, 1}, {1, 2}});
  Field D = scale(contract(geo.g, K, {{1, 0}}), -1.0);
  Field D_up = contract(geo.g_inv, D, {{1, 0}});
  axpy(out, 1.0, contract(D_up, B, {{0, 0}}));
  // last term: expanding the two covariant derivatives pointwise gives
  // C - d*B = D^mu B_{mu nu} - g^{kl} A^mu_{k nu} B_{l mu}
  Field Bup = contract(geo.g_inv, B, {{1, 0}});  // (k up, mu)
  axpy(out, -1.0, contract(A, Bup, {{0, 1}, {1, 0}}));
  return out;
}

JetF jmodified_codifferential(const JetF& g_inv, const JetF& B, const JetF& dB,
                              const Field& gammabar) {
  JetF gb = JetF::constant(gammabar);
  JetF t1 = jcontract(gb, B, {{0, 0}});                     // (k, l', nu)
  JetF t2 = jtranspose(jcontract(gb, B, {{0, 1}}), {0, 2, 1});
  JetF nb = jsub(jsub(dB, t1), t2);
  return jscale(jcontract(g_inv, nb, {{0, 0}, {1, 1}}), -1.0);
}

JetF jinvert_metric(const Field& g, const Field& g_inv, const Field& dtg) {
  (void)g;
  JetF r;
  r.v = g_inv;
  Field t = contract(g_inv, dtg, {{1, 0}});    // (a up, nu)
  Field s = contract(t, g_inv, {{1, 0}});      // (a up, b up)
  r.d = scale(s, -1.0);
  return r;
}

}  // namespace gee
