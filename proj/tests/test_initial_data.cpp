#include <cmath>

#include "doctest.h"
#include "gee/frames.hpp"
#include "gee/initial_data.hpp"
#include "gee/scenario.hpp"
#include "gee/verify.hpp"

using namespace gee;

namespace {
Grid small(int pts, int d = 4) {
  GridConfig c;
  c.dimension = d;
  c.points_per_axis = pts;
  return build_grid(c);
}

SliceData flat_data(const Grid& g) {
  SliceData d;
  d.frame = Frame::Einstein;
  const int n = g.d - 1;
  d.g0 = Field::sigma(g, 2);
  for (int m = 0; m < n; ++m)
    for (long p = 0; p < g.npts; ++p) d.g0.at(m * n + m, p) = 1.0;
  d.k = Field::sigma(g, 2);
  d.H0 = Field::sigma(g, 3);
  d.h0 = Field::sigma(g, 2);
  d.xi0 = Field::sigma(g, 1);
  d.x0 = Field::sigma(g, 0);
  d.phi0 = Field::sigma(g, 0);
  return d;
}
}  // namespace

TEST_CASE("constraints: flat trivial data vanishes in both frames") {
  Grid g = small(16);
  SliceData de = flat_data(g);
  ConstraintResiduals re = einstein_constraint_residuals(de);
  CHECK(linf(re.r1) < 1e-13);
  CHECK(linf(re.r2) < 1e-13);
  CHECK(linf(re.r3) < 1e-13);

  SliceData ds = de;
  ds.frame = Frame::String;
  ConstraintResiduals rs = string_constraint_residuals(ds);
  CHECK(linf(rs.r1) < 1e-13);
  CHECK(linf(rs.r2) < 1e-13);
  CHECK(linf(rs.r3) < 1e-13);
}

TEST_CASE("lambda family solves the string constraints exactly") {
  Grid g = small(16);
  const double lam = 0.1;
  SliceData data = lambda_family_string(g, lam);
  ConstraintResiduals r = string_constraint_residuals(data);
  CHECK(linf(r.r1) < 1e-12);
  CHECK(linf(r.r2) < 1e-12);
  CHECK(linf(r.r3) < 1e-12);

  // the other quadratic root also solves it
  SliceData other = data;
  other.x0.fill((3.0 - std::sqrt(3.0)) * lam);
  CHECK(linf(string_constraint_residuals(other).r1) < 1e-12);

  // a wrong x0 does not
  SliceData broken = data;
  broken.x0.fill(1.1 * (3.0 + std::sqrt(3.0)) * lam);
  CHECK(linf(string_constraint_residuals(broken).r1) > 1e-3);
}

TEST_CASE("transformed lambda family solves the Einstein constraints") {
  Grid g = small(16);
  SliceData data = lambda_family_string(g, 0.1);
  SliceData edata = transform_slice_data(data);
  ConstraintResiduals r = einstein_constraint_residuals(edata);
  CHECK(linf(r.r1) < 1e-12);
  CHECK(linf(r.r2) < 1e-12);
  CHECK(linf(r.r3) < 1e-12);
}

TEST_CASE("constant h0 with zero dilaton data keeps the third residual zero") {
  Grid g = small(16);
  SliceData d = flat_data(g);
  const int n = g.d - 1;
  for (long p = 0; p < g.npts; ++p) {
    d.h0({0, 1}, p) = 0.4;
    d.h0({1, 0}, p) = -0.4;
  }
  ConstraintResiduals r = einstein_constraint_residuals(d);
  CHECK(linf(r.r3) < 1e-12);
  (void)n;
}

TEST_CASE("dilaton pulse family solves the Einstein constraints analytically") {
  double err[2];
  int idx = 0;
  for (int pts : {32, 64}) {
    Grid g = small(pts);
    SliceData data = dilaton_pulse_data(g, 0.25, 0.05, 0.02, 0.05);
    ConstraintResiduals r = einstein_constraint_residuals(data);
    err[idx++] = std::max({linf(r.r1), linf(r.r2), linf(r.r3)});
  }
  CHECK(std::log2(err[0] / err[1]) == doctest::Approx(4.0).epsilon(0.1));
  CHECK(constraint_violation(dilaton_pulse_data(small(32), 0.25, 0.05, 0.02,
                                                0.05)) < 1.0);
}

TEST_CASE("setup jet: flat data gives the Minkowski jet") {
  Grid g = small(16);
  SliceData data = flat_data(g);
  Background bg = make_background(data);
  EvolutionState jet = setup_metric_dilaton(data, bg);
  setup_bfield(data, bg, jet);
  CHECK(linf(jet.vg) < 1e-13);
  CHECK(linf(jet.vB) < 1e-13);
  CHECK(linf(jet.vphi) < 1e-13);
  CHECK(linf(jet.B) < 1e-13);
  for (long p = 0; p < g.npts; ++p) CHECK(jet.g.at(0, p) == -1.0);
}

TEST_CASE("setup jet: homogeneous lambda family hand values") {
  // n = 3, flat g0, k = lam delta, phi0 = 0, flat background (F = 0):
  // dt g_00 = -2 [F_0 + tr k] = -6 lam
  Grid g = small(16);
  SliceData sdata = lambda_family_string(g, 0.1);
  SliceData data = transform_slice_data(sdata);
  Background bg = make_background(data);
  EvolutionState jet = setup_metric_dilaton(data, bg);

  // in the Einstein frame the transformed k~ is conformal too; recompute the
  // expected value from the data directly
  MetricJet mj{data.g0, std::nullopt, std::nullopt};
  MetricGeometry sg = make_geometry(mj, Signature::Riemannian);
  Field trk = metric_trace(sg, data.k);
  for (long p = 0; p < g.npts; p += 9)
    CHECK(jet.vg.at(0, p) == doctest::Approx(-2.0 * trk.at(0, p)).epsilon(1e-12));
  // dt g_0k vanishes for homogeneous data
  for (long p = 0; p < g.npts; ++p)
    for (int m = 1; m < g.d; ++m)
      CHECK(std::fabs(jet.vg.at(0 * g.d + m, p)) < 1e-13);

  // an explicit hand value: with lam = 0.1, x0 = (3 + sqrt 3) lam,
  // kappa = 1/2: k~ = lam (1 - (3 + sqrt3)/2) delta and tr k~ = 3 k~_11
  const double lam = 0.1;
  const double ktilde = lam * (1.0 - 0.5 * (3.0 + std::sqrt(3.0)));
  CHECK(jet.vg.at(1 * g.d + 1, 0) == doctest::Approx(2.0 * ktilde).epsilon(1e-12));
}

TEST_CASE("setup jet reproduces its own induced data") {
  Grid g = small(32);
  SliceData data = dilaton_pulse_data(g, 0.25, 0.05, 0.02, 0.05);
  Background bg = make_background(data);
  EvolutionState jet = setup_metric_dilaton(data, bg);
  setup_bfield(data, bg, jet);

  MetricJet mj{jet.g, jet.vg, std::nullopt};
  MetricGeometry geo = make_geometry(mj, Signature::Lorentzian);
  SliceFrame fr = make_frame(geo);
  Field dBform = exterior_derivative(jet.B, &jet.vB);
  Field H = add(bg.Hbar(0.0), dBform);
  Field dphi = grad(jet.phi, &jet.vphi);
  SliceData ind = induced_initial_data(geo, fr, H, jet.phi, dphi,
                                       Frame::Einstein);
  CHECK(linf(sub(ind.g0, data.g0)) < 1e-12);
  CHECK(linf(sub(ind.k, data.k)) < 1e-11);
  CHECK(linf(sub(ind.x0, data.x0)) < 1e-11);
  CHECK(linf(sub(*ind.phi0, *data.phi0)) < 1e-13);
  // H-data: H0 exactly; h0 includes the dB normal part, which the pure-gauge
  // B-sector was built to cancel
  CHECK(linf(sub(ind.H0, data.H0)) < 1e-11);
  CHECK(linf(sub(ind.h0, data.h0)) < 1e-10);

  // B-sector slice data round trip through the jet
  SliceData bind = ind;
  induced_bfield_data(geo, fr, jet.B, jet.vB, bind);
  CHECK(linf(sub(*bind.B0, *data.B0)) < 1e-11);
  CHECK(linf(*bind.b0) < 1e-12);  // B(N) = 0 achieved exactly
}

TEST_CASE("setup jet: B normal component vanishes and C_par is solved") {
  Grid g = small(32);
  SliceData data = dilaton_pulse_data(g, 0.25, 0.05, 0.02, 0.05);
  Background bg = make_background(data);
  EvolutionState jet = setup_metric_dilaton(data, bg);
  setup_bfield(data, bg, jet);

  // B(N) = 0 to roundoff
  MetricJet mj{jet.g, jet.vg, std::nullopt};
  MetricGeometry geo = make_geometry(mj, Signature::Lorentzian);
  SliceFrame fr = make_frame(geo);
  Field BN = interior_vec(fr.N_up, jet.B);
  CHECK(linf(BN) < 1e-13);

  // C^par solved to roundoff by the b1 subtraction
  Field C = modified_codifferential(geo, bg.geo, jet.B, jet.vB);
  CHECK(linf(restrict_to_sigma(C)) < 1e-12);
}

TEST_CASE("initial gauge check: flat, pulse convergence, broken probe") {
  Grid g = small(16);
  SliceData flat = flat_data(g);
  Background bgf = make_background(flat);
  EvolutionState jf = setup_metric_dilaton(flat, bgf);
  setup_bfield(flat, bgf, jf);
  InitialGaugeCheck cf = initial_gauge_check(jf, bgf);
  CHECK(cf.deturck < 1e-12);
  CHECK(cf.dt_deturck < 1e-12);
  CHECK(cf.c_par < 1e-12);
  CHECK(cf.dC < 1e-12);
  CHECK(cf.pass);

  Grid g32 = small(32), g64 = small(64);
  auto n1 = checks::pulse_jet_norms(g32, 0.25, 0.05, 0.02, 0.05);
  auto n2 = checks::pulse_jet_norms(g64, 0.25, 0.05, 0.02, 0.05);
  CHECK(std::log2(n1.deturck / n2.deturck) == doctest::Approx(4.0).epsilon(0.09));
  CHECK(std::log2(n1.dt_deturck / n2.dt_deturck) ==
        doctest::Approx(4.0).epsilon(0.09));
  // for this family dC on the jet sits at roundoff (already converged)
  CHECK((n2.dC < 1e-12 || std::log2(n1.dC / n2.dC) > 3.5));
  CHECK(n1.c_par < 1e-12);
  CHECK(n2.c_par < 1e-12);

  // x0 off by 10%: dt D no longer converges under refinement
  auto b1 = checks::pulse_jet_norms(g32, 0.25, 0.05, 0.02, 0.05, 1.1);
  auto b2 = checks::pulse_jet_norms(g64, 0.25, 0.05, 0.02, 0.05, 1.1);
  CHECK(b1.dt_deturck > 1e-4);
  CHECK(std::log2(b1.dt_deturck / b2.dt_deturck) < 1.0);  // stalls near 0
}

TEST_CASE("frame-shift commutation square is exact") {
  Grid g = small(24);
  for (double c : {-1.0, 0.3}) CHECK(checks::shift_commutation_err(g, c) < 1e-12);
}
