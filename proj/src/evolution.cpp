#include "gee/evolution.hpp"

#include <cmath>
#include <cstdio>

#include "gee/frames.hpp"
#include "gee/hypersurface.hpp"
#include "gee/smallmat.hpp"

namespace gee {

double max_char_speed(const Field& g) {
  const int d = g.dim();
  const int ns = d - 1;
  Field gi = invert_metric(g);
  std::vector<double> m(ns * ns), eig(ns);
  double worst = 0.0;
  for (long p = 0; p < g.npts(); ++p) {
    const double gi00 = gi.at(0, p);
    for (int i = 0; i < ns; ++i)
      for (int j = 0; j < ns; ++j)
        m[i * ns + j] = -gi.at((i + 1) * d + (j + 1), p) / gi00;
    sym_eigenvalues(m.data(), eig.data(), ns);
    worst = std::max(worst, eig[ns - 1]);
  }
  return std::sqrt(std::max(worst, 0.0));
}

namespace {

struct Slope {
  Field vg, vB, vphi;  // du/dt at the stage
  StateRates a;        // dv/dt at the stage
};

Slope eval_slope(const EvolutionState& y, const Background& bg,
                 const SourceFn* src, bool freeze) {
  Slope k;
  k.vg = y.vg;
  k.vB = y.vB;
  k.vphi = y.vphi;
  if (src) {
    Sources s = (*src)(y.t);
    k.a = modified_rhs(y, bg, &s);
  } else {
    k.a = modified_rhs(y, bg);
  }
  if (freeze) {
    k.vg.fill(0.0);
    k.vB.fill(0.0);
    k.a.ag.fill(0.0);
    k.a.aB.fill(0.0);
  }
  return k;
}

EvolutionState apply(const EvolutionState& base, const Slope& k, double c) {
  EvolutionState y = base;
  y.t = base.t + c;
  axpy(y.g, c, k.vg);
  axpy(y.B, c, k.vB);
  axpy(y.phi, c, k.vphi);
  axpy(y.vg, c, k.a.ag);
  axpy(y.vB, c, k.a.aB);
  axpy(y.vphi, c, k.a.aphi);
  return y;
}

}  // namespace

EvolutionState time_step(const EvolutionState& s, const Background& bg,
                         double dt, const SourceFn* src, bool freeze_geometry) {
  Slope k1 = eval_slope(s, bg, src, freeze_geometry);
  Slope k2 = eval_slope(apply(s, k1, 0.5 * dt), bg, src, freeze_geometry);
  Slope k3 = eval_slope(apply(s, k2, 0.5 * dt), bg, src, freeze_geometry);
  Slope k4 = eval_slope(apply(s, k3, dt), bg, src, freeze_geometry);

  EvolutionState y = s;
  y.t = s.t + dt;
  const double w = dt / 6.0;
  auto acc = [w](Field& dst, const Field& a, const Field& b, const Field& c,
                 const Field& d) {
    axpy(dst, w, a);
    axpy(dst, 2.0 * w, b);
    axpy(dst, 2.0 * w, c);
    axpy(dst, w, d);
  };
  acc(y.g, k1.vg, k2.vg, k3.vg, k4.vg);
  acc(y.B, k1.vB, k2.vB, k3.vB, k4.vB);
  acc(y.phi, k1.vphi, k2.vphi, k3.vphi, k4.vphi);
  acc(y.vg, k1.a.ag, k2.a.ag, k3.a.ag, k4.a.ag);
  acc(y.vB, k1.a.aB, k2.a.aB, k3.a.aB, k4.a.aB);
  acc(y.vphi, k1.a.aphi, k2.a.aphi, k3.a.aphi, k4.a.aphi);
  check_lorentzian(y.g);
  return y;
}

namespace {

void ko_filter_axis(const Grid& g, double* u, int grid_axis, double sigma) {
  const int N = g.npx;
  std::vector<double> d6(g.npts);
  auto val1 = [&](int i) { return u[g.wrap(i)]; };
  if (g.n_active == 1) {
    for (int i = 0; i < N; ++i)
      d6[i] = val1(i - 3) - 6.0 * val1(i - 2) + 15.0 * val1(i - 1) -
              20.0 * val1(i) + 15.0 * val1(i + 1) - 6.0 * val1(i + 2) +
              val1(i + 3);
  } else {
    for (int j = 0; j < N; ++j)
      for (int i = 0; i < N; ++i) {
        auto at = [&](int s) {
          return grid_axis == 0 ? u[g.point(g.wrap(i + s), j)]
                                : u[g.point(i, g.wrap(j + s))];
        };
        d6[g.point(i, j)] = at(-3) - 6.0 * at(-2) + 15.0 * at(-1) -
                            20.0 * at(0) + 15.0 * at(1) - 6.0 * at(2) + at(3);
      }
  }
  const double w = sigma / 64.0;
  for (long p = 0; p < g.npts; ++p) u[p] += w * d6[p];
}

}  // namespace

void apply_dissipation(EvolutionState& s, double sigma) {
  if (sigma == 0.0) return;
  const Grid& g = s.g.grid();
  for (Field* f : {&s.g, &s.B, &s.phi, &s.vg, &s.vB, &s.vphi})
    for (long c = 0; c < f->ncomp(); ++c)
      for (int a = 0; a < g.n_active; ++a)
        ko_filter_axis(g, f->comp(c), a, sigma);
}

Diagnostics monitors(const EvolutionState& s, const Background& bg,
                     const EvolutionState* exact) {
  Diagnostics d;
  d.t = s.t;

  StateRates rates = modified_rhs(s, bg);
  MetricJet mj;
  mj.g = s.g;
  mj.dt = s.vg;
  MetricGeometry geo = make_geometry(mj, Signature::Lorentzian);
  SliceFrame fr = make_frame(geo);

  // assembled H and its exact time derivative on the slice
  Field dBform = exterior_derivative(s.B, &s.vB);
  Field dtdBform = exterior_derivative(s.vB, &rates.aB);
  Field H = add(bg.Hbar(s.t), dBform);
  Field dtH = add(bg.dtHbar(), dtdBform);

  // induced slice data -> Einstein constraint residuals
  Field dphi = grad(s.phi, &s.vphi);
  SliceData data =
      induced_initial_data(geo, fr, H, s.phi, dphi, Frame::Einstein);
  ConstraintResiduals cr = einstein_constraint_residuals(data);
  d.c1 = linf(cr.r1);
  d.c2 = linf(cr.r2);
  d.c3 = linf(cr.r3);

  // gauge norms
  d.deturck = linf(deturck_covector(geo, bg));
  JetF gj{s.g, s.vg};
  JetF gij = jinvert_metric(s.g, geo.g_inv, s.vg);
  JetF Bj{s.B, s.vB};
  JetF dBj{grad(s.B, &s.vB), grad(s.vB, &rates.aB)};
  JetF C = jmodified_codifferential(gij, Bj, dBj, bg.geo.gamma);
  d.dC = linf(exterior_derivative(C.v, &C.d));

  // div T with the exact slice time derivative of T propagated by jets
  JetF phij{s.phi, s.vphi};
  JetF xij{dphi, grad(s.vphi, &rates.aphi)};
  JetF Hj{H, dtH};
  JetF T = jstress_tensor(gj, gij, xij, Hj, phij, bg.kappa);
  d.divT = linf(divergence_sym2(geo, T.v, &T.d));

  if (exact) {
    double e = linf(sub(s.g, exact->g));
    e = std::max(e, linf(sub(s.B, exact->B)));
    e = std::max(e, linf(sub(s.phi, exact->phi)));
    d.err = e;
  }

  SignatureExtrema ex = signature_extrema(s.g);
  d.g00_min = ex.g00_min;
  d.spatial_eig_min = ex.spatial_eig_min;
  return d;
}

void write_csv_header(std::FILE* f) {
  std::fprintf(f,
               "t,c1_linf,c2_linf,c3_linf,deturck_linf,dC_linf,divT_linf,"
               "err_linf,g00_min,spatial_eig_min\n");
}

void write_csv_row(std::FILE* f, const Diagnostics& d) {
  std::fprintf(f,
               "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
               d.t, d.c1, d.c2, d.c3, d.deturck, d.dC, d.divT, d.err, d.g00_min,
               d.spatial_eig_min);
}

}  // namespace gee
