#include "gee/hypersurface.hpp"

#include <cmath>
#include <stdexcept>

namespace gee {

SliceFrame make_frame(const MetricGeometry& geo) {
  const Grid& gr = geo.grid;
  const int d = geo.dim;
  SliceFrame fr;
  fr.lapse = Field::scalar(gr);
  fr.N_up = Field::ambient(gr, 1);
  fr.N_flat = Field::ambient(gr, 1);
  for (long p = 0; p < gr.npts; ++p) {
    const double gi00 = geo.g_inv.at(0, p);
    if (!(gi00 < 0.0))
      throw std::runtime_error("make_frame: slice is not spacelike (g^{00} >= 0)");
    const double alpha = 1.0 / std::sqrt(-gi00);
    fr.lapse.at(0, p) = alpha;
    fr.N_flat.at(0, p) = -alpha;  // N_mu = -alpha dt_mu, future-directed
    for (int mu = 0; mu < d; ++mu)
      fr.N_up.at(mu, p) = -alpha * geo.g_inv.at(mu, p);  // g^{mu 0} N_0
  }
  // induced metric: spatial block
  fr.g_sigma = restrict_to_sigma(geo.g);
  MetricJet mj;
  mj.g = fr.g_sigma;
  fr.sigma_geo = make_geometry(mj, Signature::Riemannian);
  // k_mn = (nabla_m N^flat)_n restricted; with N_n = 0 this is alpha Gamma^0_mn
  fr.k = Field::sigma(gr, 2);
  const int n = d - 1;
  for (long p = 0; p < gr.npts; ++p) {
    const double alpha = fr.lapse.at(0, p);
    for (int m = 0; m < n; ++m)
      for (int l = 0; l < n; ++l)
        fr.k.at(m * n + l, p) =
            alpha * geo.gamma.at((0L * d + (m + 1)) * d + (l + 1), p);
  }
  return fr;
}

Field restrict_to_sigma(const Field& a) {
  const int d = a.dim();
  const int n = d - 1;
  const int rank = a.rank();
  if (a.offset() != 0) throw std::runtime_error("restrict_to_sigma: not ambient");
  Field out(a.grid(), rank, n, 1);
  std::vector<int> idx(std::max(rank, 1), 0);
  for (long oc = 0; oc < out.ncomp(); ++oc) {
    long rem = oc;
    for (int s = rank - 1; s >= 0; --s) {
      idx[s] = static_cast<int>(rem % n);
      rem /= n;
    }
    long ca = 0;
    for (int s = 0; s < rank; ++s) ca = ca * d + (idx[s] + 1);
    const double* ap = a.comp(ca);
    double* op = out.comp(oc);
    for (long p = 0; p < a.npts(); ++p) op[p] = ap[p];
  }
  return out;
}

Field extend_to_ambient(const Field& a) {
  if (a.offset() != 1) throw std::runtime_error("extend_to_ambient: not sigma");
  const int n = a.dim();
  const int d = n + 1;
  const int rank = a.rank();
  Field out(a.grid(), rank, d, 0);
  std::vector<int> idx(std::max(rank, 1), 0);
  for (long ac = 0; ac < a.ncomp(); ++ac) {
    long rem = ac;
    for (int s = rank - 1; s >= 0; --s) {
      idx[s] = static_cast<int>(rem % n);
      rem /= n;
    }
    long co = 0;
    for (int s = 0; s < rank; ++s) co = co * d + (idx[s] + 1);
    const double* ap = a.comp(ac);
    double* op = out.comp(co);
    for (long p = 0; p < a.npts(); ++p) op[p] = ap[p];
  }
  return out;
}

Field wedge1(const Field& alpha, const Field& A) {
  if (alpha.rank() != 1) throw std::runtime_error("wedge1: alpha must be a 1-form");
  const int p = A.rank();
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
      long c = 0;
      for (int s = 0; s <= p; ++s)
        if (s != j) c = c * dim + idx[s];
      const double* al = alpha.comp(idx[j]);
      const double* ap = A.comp(c);
      for (long q = 0; q < n; ++q) op[q] += sign * al[q] * ap[q];
    }
  }
  return out;
}

Field tangential_extension(const Field& sigma, const SliceFrame& frame) {
  Field out = extend_to_ambient(sigma);
  const int d = out.dim();
  const long n = out.npts();
  // apply P slot by slot: components with a 0 at the slot pick up
  // P^l_0 = -alpha N^l times the slot-l values; spatial rows are unchanged
  for (int slot = 0; slot < out.rank(); ++slot) {
    Field next = out;
    std::vector<int> idx(out.rank(), 0);
    for (long oc = 0; oc < out.ncomp(); ++oc) {
      long rem = oc;
      for (int s = out.rank() - 1; s >= 0; --s) {
        idx[s] = static_cast<int>(rem % d);
        rem /= d;
      }
      if (idx[slot] != 0) continue;
      double* np = next.comp(oc);
      for (long q = 0; q < n; ++q) np[q] = 0.0;
      for (int l = 1; l < d; ++l) {
        long cl = 0;
        for (int s = 0; s < out.rank(); ++s)
          cl = cl * d + (s == slot ? l : idx[s]);
        const double* src = out.comp(cl);
        for (long q = 0; q < n; ++q)
          np[q] -= frame.lapse.at(0, q) * frame.N_up.at(l, q) * src[q];
      }
    }
    out = next;
  }
  return out;
}

FormDecomposition decompose_restrict(const Field& A, const SliceFrame& frame) {
  // sanity: unit normal
  FormDecomposition d;
  d.par = restrict_to_sigma(A);
  if (A.rank() >= 1)
    d.perp = restrict_to_sigma(interior_vec(frame.N_up, A));
  else
    d.perp = Field(A.grid(), 0, A.dim() - 1, 1);
  return d;
}

Field reconstruct(const FormDecomposition& d, const SliceFrame& frame) {
  Field out = tangential_extension(d.par, frame);
  if (d.par.rank() >= 1) {
    Field perp_amb = tangential_extension(d.perp, frame);
    axpy(out, -1.0, wedge1(frame.N_flat, perp_amb));
  }
  return out;
}

Field second_fundamental_form_adapted(const Field& g, const Field& dtg) {
  const int d = g.dim();
  const int n = d - 1;
  Field out(g.grid(), 2, n, 1);
  for (long p = 0; p < g.npts(); ++p) {
    for (int m = 1; m < d; ++m)
      if (std::fabs(g.at(0 * d + m, p)) > 1e-12)
        throw std::runtime_error(
            "second_fundamental_form_adapted: slice not adapted (g_{0n} != 0)");
    const double g00 = g.at(0, p);
    if (!(g00 < 0.0))
      throw std::runtime_error("second_fundamental_form_adapted: g_00 >= 0");
    const double f = 0.5 / std::sqrt(-g00);
    for (int m = 0; m < n; ++m)
      for (int l = 0; l < n; ++l)
        out.at(m * n + l, p) = f * dtg.at((m + 1) * d + (l + 1), p);
  }
  return out;
}

RestrictedDerivatives restricted_exterior_ops(const Field& A0par,
                                              const Field& A0perp,
                                              const Field& A1par,
                                              const Field& A1perp,
                                              const Field& k,
                                              const MetricGeometry& sigma_geo) {
  RestrictedDerivatives out;
  out.d_par = exterior_derivative(A0par);
  Field dperp = A1par;
  axpy(dperp, -1.0, exterior_derivative(A0perp));
  axpy(dperp, -1.0, k_dot_form(sigma_geo, k, A0par));
  out.d_perp = dperp;

  out.cod_par = codifferential(sigma_geo, A0par);
  axpy(out.cod_par, 1.0, A1perp);
  Field trk = metric_trace(sigma_geo, k);
  axpy(out.cod_par, 1.0, mul_scalar(A0perp, trk));
  axpy(out.cod_par, 1.0, k_dot_form(sigma_geo, k, A0perp));
  if (A0perp.rank() >= 1) {
    out.cod_perp = scale(codifferential(sigma_geo, A0perp), -1.0);
    out.has_cod_perp = true;
  }
  return out;
}

Field normal_derivative_tangential(const MetricGeometry& ambient_geo,
                                   const SliceFrame& frame, const Field& A,
                                   const Field& dtA) {
  Field nA = covariant_derivative(ambient_geo, A, &dtA);  // (lam, mu1..muk)
  Field withN = contract(frame.N_up, nA, {{0, 1}});       // insert N in slot 1
  return restrict_to_sigma(withN);
}

SliceData induced_initial_data(const MetricGeometry& geo, const SliceFrame& frame,
                               const Field& H, const Field& phi,
                               const Field& dphi_all, Frame frame_tag) {
  (void)geo;
  const Grid& gr = frame.sigma_geo.grid;
  SliceData data;
  data.frame = frame_tag;
  data.g0 = frame.g_sigma;
  data.k = frame.k;
  data.H0 = restrict_to_sigma(H);
  data.h0 = restrict_to_sigma(interior_vec(frame.N_up, H));
  Field x0 = Field::sigma(gr, 0);
  x0.raw() = contract(frame.N_up, dphi_all, {{0, 0}}).raw();  // N(phi)
  data.x0 = x0;
  Field phi0 = Field::sigma(gr, 0);
  phi0.raw() = phi.raw();
  data.phi0 = phi0;
  data.xi0 = restrict_to_sigma(dphi_all);  // iota* xi  (= d^S phi0)
  return data;
}

void induced_bfield_data(const MetricGeometry& geo, const SliceFrame& frame,
                         const Field& B, const Field& dtB, SliceData& out) {
  FormDecomposition b = decompose_restrict(B, frame);
  out.B0 = b.par;
  out.b0 = b.perp;
  Field nB = covariant_derivative(geo, B, &dtB);          // (lam, mu, nu)
  Field nNB = contract(frame.N_up, nB, {{0, 0}});         // nabla_N B
  FormDecomposition b1 = decompose_restrict(nNB, frame);
  out.B1 = b1.par;
  out.b1 = b1.perp;
}

std::pair<Field, Field> potential_slice_data(const Field& B0, const Field& b0,
                                             const Field& B1, const Field& k,
                                             const MetricGeometry& sigma_geo) {
  Field H0 = exterior_derivative(B0);
  Field h0 = B1;
  axpy(h0, -1.0, exterior_derivative(b0));
  axpy(h0, -1.0, k_dot_form(sigma_geo, k, B0));
  return {H0, h0};
}

}  // namespace gee
