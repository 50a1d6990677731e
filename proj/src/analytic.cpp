#include "gee/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gee {

namespace {
constexpr double kHalfPi = 1.5707963267948966192313216916398;
}

double TrigFactor::value(double v) const {
  if (freq == 0.0 && phase == 0.0) return 1.0;
  return std::cos(freq * v + phase);
}
double TrigFactor::d1(double v) const {
  if (freq == 0.0) return 0.0;
  return freq * std::cos(freq * v + phase + kHalfPi);
}
double TrigFactor::d2(double v) const {
  if (freq == 0.0) return 0.0;
  return -freq * freq * std::cos(freq * v + phase);
}

void AnalyticScalar::add_constant(double c) {
  TrigMode m;
  m.amp = c;
  modes_.push_back(m);
}

AnalyticScalar AnalyticScalar::scaled(double f) const {
  AnalyticScalar s = *this;
  for (auto& m : s.modes_) m.amp *= f;
  return s;
}

double AnalyticScalar::value(double t, double x1, double x2) const {
  double s = 0.0;
  for (const auto& m : modes_)
    s += m.amp * m.t.value(t) * m.x1.value(x1) * m.x2.value(x2);
  return s;
}

double AnalyticScalar::d1(int mu, double t, double x1, double x2) const {
  if (mu > 2) return 0.0;
  double s = 0.0;
  for (const auto& m : modes_) {
    double f0 = mu == 0 ? m.t.d1(t) : m.t.value(t);
    double f1 = mu == 1 ? m.x1.d1(x1) : m.x1.value(x1);
    double f2 = mu == 2 ? m.x2.d1(x2) : m.x2.value(x2);
    s += m.amp * f0 * f1 * f2;
  }
  return s;
}

double AnalyticScalar::d2(int mu, int nu, double t, double x1, double x2) const {
  if (mu > 2 || nu > 2) return 0.0;
  double s = 0.0;
  for (const auto& m : modes_) {
    double f0, f1, f2;
    if (mu == nu) {
      f0 = mu == 0 ? m.t.d2(t) : m.t.value(t);
      f1 = mu == 1 ? m.x1.d2(x1) : m.x1.value(x1);
      f2 = mu == 2 ? m.x2.d2(x2) : m.x2.value(x2);
    } else {
      auto pick = [&](int axis, int which) {
        bool hit = (axis == mu) || (axis == nu);
        switch (which) {
          case 0: return hit ? m.t.d1(t) : m.t.value(t);
          case 1: return hit ? m.x1.d1(x1) : m.x1.value(x1);
          default: return hit ? m.x2.d1(x2) : m.x2.value(x2);
        }
      };
      f0 = pick(0, 0);
      f1 = pick(1, 1);
      f2 = pick(2, 2);
    }
    s += m.amp * f0 * f1 * f2;
  }
  return s;
}

AnalyticTensor::AnalyticTensor(int rank, int dim) : rank_(rank), dim_(dim) {
  long nc = 1;
  for (int i = 0; i < rank; ++i) nc *= dim;
  comps_.resize(nc);
}

Field AnalyticTensor::sample(const Grid& g, double t) const {
  Field out(g, rank_, dim_, 0);
  for (long c = 0; c < ncomp(); ++c) {
    if (comps_[c].empty()) continue;
    double* op = out.comp(c);
    for (long p = 0; p < g.npts; ++p) {
      const double x1 = g.coord(p, 1);
      const double x2 = g.n_active > 1 ? g.coord(p, 2) : 0.0;
      op[p] = comps_[c].value(t, x1, x2);
    }
  }
  return out;
}

Field AnalyticTensor::sample_dt(const Grid& g, double t) const {
  Field out(g, rank_, dim_, 0);
  for (long c = 0; c < ncomp(); ++c) {
    if (comps_[c].empty()) continue;
    double* op = out.comp(c);
    for (long p = 0; p < g.npts; ++p)
      op[p] = comps_[c].d1(0, t, g.coord(p, 1),
                           g.n_active > 1 ? g.coord(p, 2) : 0.0);
  }
  return out;
}

Field AnalyticTensor::sample_dtt(const Grid& g, double t) const {
  Field out(g, rank_, dim_, 0);
  for (long c = 0; c < ncomp(); ++c) {
    if (comps_[c].empty()) continue;
    double* op = out.comp(c);
    for (long p = 0; p < g.npts; ++p)
      op[p] = comps_[c].d2(0, 0, t, g.coord(p, 1),
                           g.n_active > 1 ? g.coord(p, 2) : 0.0);
  }
  return out;
}

Field AnalyticTensor::sample_grad(const Grid& g, double t) const {
  Field out(g, rank_ + 1, dim_, 0);
  const long block = ncomp();
  for (int mu = 0; mu < dim_; ++mu) {
    for (long c = 0; c < block; ++c) {
      if (comps_[c].empty()) continue;
      double* op = out.comp(mu * block + c);
      for (long p = 0; p < g.npts; ++p)
        op[p] = comps_[c].d1(mu, t, g.coord(p, 1),
                             g.n_active > 1 ? g.coord(p, 2) : 0.0);
    }
  }
  return out;
}

Field AnalyticTensor::sample_grad2(const Grid& g, double t) const {
  Field out(g, rank_ + 2, dim_, 0);
  const long block = ncomp();
  for (int mu = 0; mu < dim_; ++mu) {
    for (int nu = 0; nu < dim_; ++nu) {
      for (long c = 0; c < block; ++c) {
        if (comps_[c].empty()) continue;
        double* op = out.comp((static_cast<long>(mu) * dim_ + nu) * block + c);
        for (long p = 0; p < g.npts; ++p)
          op[p] = comps_[c].d2(mu, nu, t, g.coord(p, 1),
                               g.n_active > 1 ? g.coord(p, 2) : 0.0);
      }
    }
  }
  return out;
}

// ---- random families --------------------------------------------------------

AnalyticScalar random_scalar(std::mt19937& rng, const Grid& g, double amp,
                             bool time_dependent) {
  std::uniform_real_distribution<double> uphase(0.0, 6.2831853);
  std::uniform_real_distribution<double> uamp(0.4, 1.0);
  std::uniform_real_distribution<double> uomega(0.5, 1.4);
  std::uniform_int_distribution<int> uk(1, 2);
  const double k0 = 6.2831853071795864769 / g.length;

  AnalyticScalar s;
  const int nmodes = 2;
  for (int m = 0; m < nmodes; ++m) {
    TrigMode mode;
    mode.amp = amp * uamp(rng) / nmodes;
    if (time_dependent) {
      mode.t.freq = uomega(rng);
      mode.t.phase = uphase(rng);
    }
    mode.x1.freq = k0 * uk(rng);
    mode.x1.phase = uphase(rng);
    if (g.n_active > 1) {
      mode.x2.freq = k0 * uk(rng);
      mode.x2.phase = uphase(rng);
    }
    s.add_mode(mode);
  }
  return s;
}

AnalyticTensor random_sym2(std::mt19937& rng, const Grid& g, double amp) {
  AnalyticTensor T(2, g.d);
  for (int i = 0; i < g.d; ++i)
    for (int j = i; j < g.d; ++j) {
      AnalyticScalar s = random_scalar(rng, g, amp);
      T.comp(i * g.d + j) = s;
      if (i != j) T.comp(j * g.d + i) = s;
    }
  return T;
}

AnalyticTensor minkowski(int dim) {
  AnalyticTensor T(2, dim);
  T.comp(0).add_constant(-1.0);
  for (int i = 1; i < dim; ++i) T.comp(i * dim + i).add_constant(1.0);
  return T;
}

AnalyticTensor random_metric(std::mt19937& rng, const Grid& g, double amp) {
  AnalyticTensor T = random_sym2(rng, g, amp);
  T.comp(0).add_constant(-1.0);
  for (int i = 1; i < g.d; ++i) T.comp(i * g.d + i).add_constant(1.0);
  return T;
}

AnalyticTensor random_form(std::mt19937& rng, const Grid& g, int p, double amp) {
  if (p < 0 || p > 4) throw std::runtime_error("random_form: degree out of range");
  AnalyticTensor T(p, g.d);
  if (p == 0) {
    T.comp(0) = random_scalar(rng, g, amp);
    return T;
  }
  // fill strictly increasing index tuples, then scatter with permutation signs
  std::vector<int> idx(p);
  for (int i = 0; i < p; ++i) idx[i] = i;
  auto advance = [&]() {
    for (int s = p - 1; s >= 0; --s) {
      if (idx[s] < g.d - (p - s)) {
        ++idx[s];
        for (int r = s + 1; r < p; ++r) idx[r] = idx[r - 1] + 1;
        return true;
      }
    }
    return false;
  };
  do {
    AnalyticScalar s = random_scalar(rng, g, amp);
    // scatter over all permutations of idx with signs
    std::vector<int> perm(p);
    for (int i = 0; i < p; ++i) perm[i] = i;
    do {
      int sign = 1;
      for (int a = 0; a < p; ++a)
        for (int b = a + 1; b < p; ++b)
          if (perm[a] > perm[b]) sign = -sign;
      long c = 0;
      for (int s2 = 0; s2 < p; ++s2) c = c * g.d + idx[perm[s2]];
      T.comp(c) = sign < 0 ? s.scaled(-1.0) : s;
    } while (std::next_permutation(perm.begin(), perm.end()));
  } while (advance());
  return T;
}

}  // namespace gee
