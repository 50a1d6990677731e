#include "gee/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "gee/frames.hpp"

#include "json.hpp"

namespace gee {

namespace {

constexpr double kTwoPi = 6.2831853071795864769252867665590;

SliceData trivial_einstein_data(const Grid& gr) {
  const int n = gr.d - 1;
  SliceData data;
  data.frame = Frame::Einstein;
  data.g0 = Field::sigma(gr, 2);
  for (int m = 0; m < n; ++m)
    for (long p = 0; p < gr.npts; ++p) data.g0.at(m * n + m, p) = 1.0;
  data.k = Field::sigma(gr, 2);
  data.H0 = Field::sigma(gr, 3);
  data.h0 = Field::sigma(gr, 2);
  data.xi0 = Field::sigma(gr, 1);
  data.x0 = Field::sigma(gr, 0);
  data.phi0 = Field::sigma(gr, 0);
  return data;
}

EvolutionState flat_state(const Grid& gr) {
  EvolutionState s;
  s.t = 0.0;
  s.g = Field::ambient(gr, 2);
  for (long p = 0; p < gr.npts; ++p) {
    s.g.at(0, p) = -1.0;
    for (int i = 1; i < gr.d; ++i) s.g.at(i * gr.d + i, p) = 1.0;
  }
  s.B = Field::ambient(gr, 2);
  s.phi = Field::scalar(gr);
  s.vg = Field::ambient(gr, 2);
  s.vB = Field::ambient(gr, 2);
  s.vphi = Field::scalar(gr);
  return s;
}

}  // namespace

SliceData lambda_family_string(const Grid& gr, double lambda) {
  if (gr.d != 4)
    throw std::runtime_error("lambda_family_string: needs d = 4 (n = 3)");
  SliceData data;
  data.frame = Frame::String;
  const int n = 3;
  data.g0 = Field::sigma(gr, 2);
  data.k = Field::sigma(gr, 2);
  for (int m = 0; m < n; ++m)
    for (long p = 0; p < gr.npts; ++p) {
      data.g0.at(m * n + m, p) = 1.0;
      data.k.at(m * n + m, p) = lambda;
    }
  data.H0 = Field::sigma(gr, 3);
  data.h0 = Field::sigma(gr, 2);
  data.xi0 = Field::sigma(gr, 1);
  data.x0 = Field::sigma(gr, 0);
  const double x0 = (3.0 + std::sqrt(3.0)) * lambda;
  for (long p = 0; p < gr.npts; ++p) data.x0.at(0, p) = x0;
  data.phi0 = Field::sigma(gr, 0);  // potential zero, xi0 = 0
  return data;
}

SliceData dilaton_pulse_data(const Grid& gr, double lambda0, double eps,
                             double amp_psi, double amp_phi, double amp_B) {
  if (gr.d != 4)
    throw std::runtime_error("dilaton_pulse_data: needs d = 4 (n = 3)");
  const int n = 3;
  const double k0 = kTwoPi / gr.length;
  const double kap = 0.5;  // 1/(d-2), d = 4
  const double phi1 = -2.0 * eps / kap;

  SliceData data;
  data.frame = Frame::Einstein;
  data.g0 = Field::sigma(gr, 2);
  data.k = Field::sigma(gr, 2);
  data.H0 = Field::sigma(gr, 3);
  data.h0 = Field::sigma(gr, 2);
  data.xi0 = Field::sigma(gr, 1);
  data.x0 = Field::sigma(gr, 0);
  Field phi0 = Field::sigma(gr, 0);

  for (long p = 0; p < gr.npts; ++p) {
    const double x = gr.coord(p, 1);
    const double psi = amp_psi * std::cos(k0 * x + 1.1);
    const double dpsi = -amp_psi * k0 * std::sin(k0 * x + 1.1);
    const double ddpsi = -amp_psi * k0 * k0 * std::cos(k0 * x + 1.1);
    const double ph = amp_phi * std::cos(k0 * x + 0.4);
    const double dph = -amp_phi * k0 * std::sin(k0 * x + 0.4);
    const double e2psi = std::exp(2.0 * psi);
    // scalar curvature of g0 = e^{2 psi} delta (3d, 1d profile)
    const double sc = (-4.0 * ddpsi - 2.0 * dpsi * dpsi) / e2psi;
    const double lam = lambda0 + eps * ph;
    const double Q = sc + 6.0 * lam * lam - kap * (dph * dph / e2psi) -
                     kap * phi1 * phi1;
    if (Q <= 0.0)
      throw std::runtime_error(
          "dilaton_pulse_data: Hamiltonian budget not positive; reduce the "
          "modulation amplitudes or raise lambda");
    const double mu = std::sqrt(2.0 * Q * std::exp(2.0 * ph + 6.0 * psi));

    for (int m = 0; m < n; ++m) {
      data.g0.at(m * n + m, p) = e2psi;
      data.k.at(m * n + m, p) = lam * e2psi;
    }
    // H0 = mu dx^1 ^ dx^2 ^ dx^3 : all index permutations with signs
    data.H0({0, 1, 2}, p) = mu;
    data.H0({1, 2, 0}, p) = mu;
    data.H0({2, 0, 1}, p) = mu;
    data.H0({0, 2, 1}, p) = -mu;
    data.H0({2, 1, 0}, p) = -mu;
    data.H0({1, 0, 2}, p) = -mu;
    phi0.at(0, p) = ph;
    data.x0.at(0, p) = phi1;
  }
  data.phi0 = phi0;
  data.xi0 = grad(phi0);

  // pure-gauge B-sector: B0 closed (d^S B0 = 0) and B1 = k . B0, so the
  // induced H-data (H0, h0) is untouched while C and dC become nontrivial
  if (amp_B != 0.0) {
    Field B0 = Field::sigma(gr, 2);
    Field B1 = Field::sigma(gr, 2);
    for (long p = 0; p < gr.npts; ++p) {
      const double x = gr.coord(p, 1);
      const double beta = amp_B * std::cos(k0 * x + 0.9);
      const double lam = lambda0 + eps * amp_phi * std::cos(k0 * x + 0.4);
      B0({0, 1}, p) = beta;
      B0({1, 0}, p) = -beta;
      const double b1v = -2.0 * lam * beta;  // (k . B0) for k = lam id
      B1({0, 1}, p) = b1v;
      B1({1, 0}, p) = -b1v;
    }
    data.B0 = B0;
    data.B1 = B1;
    data.b0 = Field::sigma(gr, 1);
  }
  return data;
}

MmsTuple mms_wave_tuple(const Grid& gr, double amp) {
  std::mt19937 rng(12345);
  MmsTuple t;
  t.g = random_metric(rng, gr, amp);
  t.B = random_form(rng, gr, 2, amp);
  t.phi = AnalyticTensor(0, gr.d);
  t.phi.comp(0) = random_scalar(rng, gr, amp);
  return t;
}

EvolutionState sample_state(const Grid& gr, const MmsTuple& tup, double t) {
  EvolutionState s;
  s.t = t;
  s.g = tup.g.sample(gr, t);
  s.vg = tup.g.sample_dt(gr, t);
  s.B = tup.B.sample(gr, t);
  s.vB = tup.B.sample_dt(gr, t);
  Field phi = tup.phi.sample(gr, t);
  Field vphi = tup.phi.sample_dt(gr, t);
  s.phi = Field::scalar(gr);
  s.phi.raw() = phi.raw();
  s.vphi = Field::scalar(gr);
  s.vphi.raw() = vphi.raw();
  return s;
}

Sources mms_source_analytic(const Grid& gr, const Background& bg,
                            const MmsTuple& tup, double t) {
  Field g = tup.g.sample(gr, t);
  Field dg = tup.g.sample_grad(gr, t);
  Field ddg = tup.g.sample_grad2(gr, t);
  MetricGeometry geo =
      make_geometry_from_derivs(g, dg, ddg, Signature::Lorentzian);

  SliceFields sf;
  sf.t = t;
  sf.g = g;
  sf.dg = dg;
  sf.B = tup.B.sample(gr, t);
  sf.dB = tup.B.sample_grad(gr, t);
  Field phi = tup.phi.sample(gr, t);
  sf.phi = Field::scalar(gr);
  sf.phi.raw() = phi.raw();
  Field dphi = tup.phi.sample_grad(gr, t);
  sf.dphi = dphi;

  ModifiedRhs f = assemble_rhs(sf, bg, geo);
  Sources s;
  s.sg = sub(contract(geo.g_inv, ddg, {{0, 0}, {1, 1}}), f.f_g);
  Field ddB = tup.B.sample_grad2(gr, t);
  s.sB = sub(contract(geo.g_inv, ddB, {{0, 0}, {1, 1}}), f.f_B);
  Field ddphi = tup.phi.sample_grad2(gr, t);
  s.sphi = sub(contract(geo.g_inv, ddphi, {{0, 0}, {1, 1}}), f.f_phi);
  // the phi block carries a scalar shape
  Field sphi = Field::scalar(gr);
  sphi.raw() = s.sphi.raw();
  s.sphi = sphi;
  return s;
}

Sources mms_source_discrete(const Grid& gr, const Background& bg,
                            const MmsTuple& tup, double t) {
  EvolutionState s = sample_state(gr, tup, t);
  MetricJet mj;
  mj.g = s.g;
  mj.dt = s.vg;
  MetricGeometry geo = make_geometry(mj, Signature::Lorentzian);
  ModifiedRhs f = assemble_rhs(slice_fields_from_state(s), bg, geo);

  auto principal_discrete = [&](const Field& u, const Field& v,
                                const Field& dtt) {
    // g^{00} dtt u + 2 g^{0i} d_i v + g^{ij} d_i d_j u  (stencil spatials)
    const int d = gr.d;
    Field out(u.grid(), u.rank(), u.dim(), u.offset());
    const double* gi00 = geo.g_inv.comp(0);
    for (long c = 0; c < u.ncomp(); ++c) {
      double* op = out.comp(c);
      const double* ap = dtt.comp(c);
      for (long p = 0; p < gr.npts; ++p) op[p] = gi00[p] * ap[p];
    }
    for (int i = 1; i <= gr.n_active; ++i) {
      Field div = partial_derivative(v, i);
      Field ddiu = partial_derivative(partial_derivative(u, i), i);
      const double* gi0i = geo.g_inv.comp(i);
      const double* giii = geo.g_inv.comp(static_cast<long>(i) * d + i);
      for (long c = 0; c < u.ncomp(); ++c) {
        double* op = out.comp(c);
        const double* dv = div.comp(c);
        const double* dd = ddiu.comp(c);
        for (long p = 0; p < gr.npts; ++p)
          op[p] += 2.0 * gi0i[p] * dv[p] + giii[p] * dd[p];
      }
      for (int j = i + 1; j <= gr.n_active; ++j) {
        Field ddij = partial_derivative(partial_derivative(u, i), j);
        const double* giij = geo.g_inv.comp(static_cast<long>(i) * d + j);
        for (long c = 0; c < u.ncomp(); ++c) {
          double* op = out.comp(c);
          const double* dd = ddij.comp(c);
          for (long p = 0; p < gr.npts; ++p) op[p] += 2.0 * giij[p] * dd[p];
        }
      }
    }
    return out;
  };

  Sources src;
  src.sg = sub(principal_discrete(s.g, s.vg, tup.g.sample_dtt(gr, t)), f.f_g);
  src.sB = sub(principal_discrete(s.B, s.vB, tup.B.sample_dtt(gr, t)), f.f_B);
  Field dttphi = Field::scalar(gr);
  dttphi.raw() = tup.phi.sample_dtt(gr, t).raw();
  src.sphi = sub(principal_discrete(s.phi, s.vphi, dttphi), f.f_phi);
  return src;
}

ScenarioSetup build_scenario(const ScenarioConfig& cfg) {
  ScenarioSetup su;
  su.grid = build_grid(cfg.grid);
  const Grid& gr = su.grid;

  if (cfg.name == "flat") {
    su.data = trivial_einstein_data(gr);
    su.bg = make_background(su.data);
    su.init = setup_metric_dilaton(su.data, su.bg);
    setup_bfield(su.data, su.bg, su.init);
    su.has_exact = true;
    su.exact = [gr](double t) {
      EvolutionState s = flat_state(gr);
      s.t = t;
      return s;
    };
    return su;
  }

  if (cfg.name == "mms-wave") {
    su.data = trivial_einstein_data(gr);
    su.bg = make_background(su.data);
    const double amp = cfg.param("amplitude", 0.03);
    auto tup = std::make_shared<MmsTuple>(mms_wave_tuple(gr, amp));
    su.init = sample_state(gr, *tup, 0.0);
    su.has_exact = true;
    su.exact = [gr, tup](double t) { return sample_state(gr, *tup, t); };
    su.has_source = true;
    const Background* bgp = nullptr;  // bound below after bg is stable
    (void)bgp;
    Background bg = su.bg;
    const bool discrete = cfg.param("discrete_source", 0.0) != 0.0;
    su.source = [gr, tup, bg, discrete](double t) {
      return discrete ? mms_source_discrete(gr, bg, *tup, t)
                      : mms_source_analytic(gr, bg, *tup, t);
    };
    return su;
  }

  if (cfg.name == "dilaton-pulse" || cfg.name == "gauge-probe") {
    su.data = dilaton_pulse_data(gr, cfg.param("lambda", 0.25),
                                 cfg.param("eps", 0.05),
                                 cfg.param("amp_psi", 0.02),
                                 cfg.param("amp_phi", 0.05),
                                 cfg.param("amp_B", 0.05));
    if (cfg.name == "gauge-probe") {
      // deliberately broken data: scale the normal dilaton derivative
      su.data.x0 = scale(su.data.x0, cfg.param("break", 1.1));
    }
    const double viol = constraint_violation(su.data);
    if (viol > 1.0) {
      if (cfg.strict_constraints)
        throw std::runtime_error(
            "scenario data violates the constraint equations (ratio " +
            std::to_string(viol) + "); pass --strict-constraints off to probe");
      std::fprintf(stderr,
                   "warning: constraint residuals above threshold (ratio %g)\n",
                   viol);
    }
    su.bg = make_background(su.data);
    su.init = setup_metric_dilaton(su.data, su.bg);
    setup_bfield(su.data, su.bg, su.init);
    return su;
  }

  if (cfg.name == "scalar-wave") {
    su.data = trivial_einstein_data(gr);
    su.bg = make_background(su.data);
    su.init = flat_state(gr);
    su.freeze_geometry = true;
    const double k = kTwoPi / gr.length;
    // phi = sin(k(x - t)) = sin(kx)cos(kt) - cos(kx)sin(kt)
    auto tup = std::make_shared<AnalyticTensor>(0, gr.d);
    TrigMode m1;
    m1.amp = 1.0;
    m1.t = {k, 0.0};
    m1.x1 = {k, -1.5707963267948966};
    tup->comp(0).add_mode(m1);
    TrigMode m2;
    m2.amp = -1.0;
    m2.t = {k, -1.5707963267948966};
    m2.x1 = {k, 0.0};
    tup->comp(0).add_mode(m2);
    su.has_exact = true;
    su.exact = [gr, tup](double t) {
      EvolutionState s = flat_state(gr);
      s.t = t;
      s.phi.raw() = tup->sample(gr, t).raw();
      s.vphi.raw() = tup->sample_dt(gr, t).raw();
      return s;
    };
    su.init = su.exact(0.0);
    return su;
  }

  throw std::runtime_error("unknown scenario: " + cfg.name);
}

namespace {

void write_snapshot(nlohmann::json& arr, const EvolutionState& s) {
  auto rec = [&arr, &s](const char* name, const Field& f, int r, int c) {
    nlohmann::json j;
    j["t"] = s.t;
    j["field"] = name;
    j["valence"] = {r, c};
    j["components"] = nlohmann::json::array();
    // row-major component order, points fastest within each component
    for (double v : f.raw()) j["components"].push_back(v);
    arr.push_back(j);
  };
  rec("g", s.g, 0, 2);
  rec("B", s.B, 0, 2);
  rec("phi", s.phi, 0, 0);
}

}  // namespace

RunResult run_scenario(const ScenarioConfig& cfg) {
  ScenarioSetup su = build_scenario(cfg);
  RunResult out;

  std::FILE* csv = nullptr;
  if (!cfg.output_path.empty()) {
    csv = std::fopen(cfg.output_path.c_str(), "w");
    if (!csv)
      throw std::runtime_error("run_scenario: cannot open " + cfg.output_path);
    write_csv_header(csv);
  }
  nlohmann::json snaps = nlohmann::json::array();

  EvolutionState state = su.init;
  const SourceFn* src = su.has_source ? &su.source : nullptr;

  auto record = [&](const EvolutionState& s) {
    EvolutionState ex;
    const EvolutionState* exp = nullptr;
    if (su.has_exact) {
      ex = su.exact(s.t);
      exp = &ex;
    }
    Diagnostics d = monitors(s, su.bg, exp);
    out.series.push_back(d);
    if (csv) write_csv_row(csv, d);
    if (cfg.snapshots) write_snapshot(snaps, s);
  };

  int step = 0;
  try {
    record(state);
    while (state.t < cfg.t_end - 1e-12) {
      const double cmax = std::max(max_char_speed(state.g), 1e-8);
      double dt = cfg.cfl * su.grid.h / cmax;
      dt = std::min(dt, cfg.t_end - state.t);
      state = time_step(state, su.bg, dt, src, su.freeze_geometry);
      if (cfg.dissipation != 0.0) apply_dissipation(state, cfg.dissipation);
      ++step;
      if (step % std::max(cfg.cadence, 1) == 0 || state.t >= cfg.t_end - 1e-12)
        record(state);
    }
    out.status = 0;
  } catch (const std::exception& e) {
    out.status = 1;
    out.abort_reason = e.what();
  }
  out.t_reached = state.t;
  out.final_state = state;

  if (csv) std::fclose(csv);
  if (cfg.snapshots) {
    std::string path = cfg.snapshot_path.empty()
                           ? (cfg.output_path.empty() ? "snapshots.json"
                                                      : cfg.output_path + ".snapshots.json")
                           : cfg.snapshot_path;
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (f) {
      std::string text = snaps.dump();
      std::fwrite(text.data(), 1, text.size(), f);
      std::fclose(f);
    }
  }
  return out;
}

}  // namespace gee
