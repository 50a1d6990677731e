#include "gee/field.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace gee {

namespace {

long ipow(long b, int e) {
  long r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

void require(bool ok, const char* msg) {
  if (!ok) throw std::runtime_error(msg);
}

}  // namespace

Field::Field(const Grid& grid, int rank, int dim, int offset)
    : grid_(grid), rank_(rank), dim_(dim), offset_(offset) {
  require(rank >= 0 && rank <= 5, "Field: rank out of supported range");
  require(dim >= 1, "Field: bad index dimension");
  ncomp_ = ipow(dim, rank);
  data_.assign(ncomp_ * grid.npts, 0.0);
}

void Field::fill(double v) { std::fill(data_.begin(), data_.end(), v); }

// ---- arithmetic -----------------------------------------------------------

static void check_same_shape(const Field& a, const Field& b, const char* who) {
  require(!a.empty() && !b.empty(), "field op on empty field");
  require(a.rank() == b.rank() && a.dim() == b.dim() && a.npts() == b.npts(),
          who);
}

Field add(const Field& a, const Field& b) {
  check_same_shape(a, b, "add: shape mismatch");
  Field r = a;
  const auto& bd = b.raw();
  auto& rd = r.raw();
  for (size_t i = 0; i < rd.size(); ++i) rd[i] += bd[i];
  return r;
}

Field sub(const Field& a, const Field& b) {
  check_same_shape(a, b, "sub: shape mismatch");
  Field r = a;
  const auto& bd = b.raw();
  auto& rd = r.raw();
  for (size_t i = 0; i < rd.size(); ++i) rd[i] -= bd[i];
  return r;
}

Field scale(const Field& a, double c) {
  Field r = a;
  for (auto& v : r.raw()) v *= c;
  return r;
}

void axpy(Field& y, double a, const Field& x) {
  check_same_shape(y, x, "axpy: shape mismatch");
  auto& yd = y.raw();
  const auto& xd = x.raw();
  for (size_t i = 0; i < yd.size(); ++i) yd[i] += a * xd[i];
}

Field mul_scalar(const Field& a, const Field& s) {
  require(s.rank() == 0, "mul_scalar: s must be scalar");
  require(a.npts() == s.npts(), "mul_scalar: grid mismatch");
  Field r = a;
  const double* sp = s.comp(0);
  const long n = a.npts();
  for (long c = 0; c < r.ncomp(); ++c) {
    double* rp = r.comp(c);
    for (long p = 0; p < n; ++p) rp[p] *= sp[p];
  }
  return r;
}

Field exp_scale(const Field& s, double c) {
  require(s.rank() == 0, "exp_scale: s must be scalar");
  Field r = s;
  for (auto& v : r.raw()) v = std::exp(c * v);
  return r;
}

// ---- contraction engine ---------------------------------------------------

Field contract(const Field& a, const Field& b,
               const std::vector<std::pair<int, int>>& pairs) {
  require(!a.empty() && !b.empty(), "contract: empty field");
  require(a.dim() == b.dim() && a.npts() == b.npts(),
          "contract: dim/grid mismatch");
  const int dim = a.dim();
  const long n = a.npts();
  const int nc = static_cast<int>(pairs.size());

  std::vector<bool> a_bound(a.rank(), false), b_bound(b.rank(), false);
  for (auto [sa, sb] : pairs) {
    require(sa >= 0 && sa < a.rank() && sb >= 0 && sb < b.rank(),
            "contract: slot out of range");
    require(!a_bound[sa] && !b_bound[sb], "contract: slot bound twice");
    a_bound[sa] = b_bound[sb] = true;
  }
  std::vector<int> a_free, b_free;
  for (int s = 0; s < a.rank(); ++s)
    if (!a_bound[s]) a_free.push_back(s);
  for (int s = 0; s < b.rank(); ++s)
    if (!b_bound[s]) b_free.push_back(s);

  const int out_rank = static_cast<int>(a_free.size() + b_free.size());
  Field out(a.grid(), out_rank, dim, a.offset());

  // strides of a slot in the flattened component index
  auto strides = [dim](int rank) {
    std::vector<long> st(rank, 1);
    for (int s = rank - 2; s >= 0; --s) st[s] = st[s + 1] * dim;
    return st;
  };
  const auto sa_st = strides(a.rank());
  const auto sb_st = strides(b.rank());
  const auto so_st = strides(out_rank);

  // enumerate output components and the summed multi-index
  std::vector<int> oidx(std::max(out_rank, 1), 0);
  std::vector<int> kidx(std::max(nc, 1), 0);
  const long n_out = out.ncomp();
  const long n_sum = ipow(dim, nc);

  for (long oc = 0; oc < n_out; ++oc) {
    // decode output component into free-slot values
    {
      long rem = oc;
      for (int s = 0; s < out_rank; ++s) {
        oidx[s] = static_cast<int>(rem / so_st[s]);
        rem %= so_st[s];
      }
    }
    long ca_base = 0, cb_base = 0;
    for (size_t i = 0; i < a_free.size(); ++i) ca_base += oidx[i] * sa_st[a_free[i]];
    for (size_t i = 0; i < b_free.size(); ++i)
      cb_base += oidx[a_free.size() + i] * sb_st[b_free[i]];

    double* op = out.comp(oc);
    for (long ks = 0; ks < n_sum; ++ks) {
      {
        long rem = ks;
        for (int i = nc - 1; i >= 0; --i) {
          kidx[i] = static_cast<int>(rem % dim);
          rem /= dim;
        }
      }
      long ca = ca_base, cb = cb_base;
      for (int i = 0; i < nc; ++i) {
        ca += kidx[i] * sa_st[pairs[i].first];
        cb += kidx[i] * sb_st[pairs[i].second];
      }
      const double* ap = a.comp(ca);
      const double* bp = b.comp(cb);
      for (long p = 0; p < n; ++p) op[p] += ap[p] * bp[p];
    }
  }
  return out;
}

// ---- permutations & symmetry ------------------------------------------------

Field transpose(const Field& a, const std::vector<int>& perm) {
  require(static_cast<int>(perm.size()) == a.rank(), "transpose: bad perm");
  Field out(a.grid(), a.rank(), a.dim(), a.offset());
  const int dim = a.dim();
  const int rank = a.rank();
  std::vector<int> oidx(std::max(rank, 1), 0), aidx(std::max(rank, 1), 0);
  const long n = a.npts();
  for (long oc = 0; oc < out.ncomp(); ++oc) {
    long rem = oc;
    for (int s = rank - 1; s >= 0; --s) {
      oidx[s] = static_cast<int>(rem % dim);
      rem /= dim;
    }
    for (int s = 0; s < rank; ++s) aidx[perm[s]] = oidx[s];
    long ca = 0;
    for (int s = 0; s < rank; ++s) ca = ca * dim + aidx[s];
    const double* ap = a.comp(ca);
    double* op = out.comp(oc);
    for (long p = 0; p < n; ++p) op[p] = ap[p];
  }
  return out;
}

Field symmetrize_pair(const Field& a, int s1, int s2) {
  std::vector<int> perm(a.rank());
  for (int s = 0; s < a.rank(); ++s) perm[s] = s;
  std::swap(perm[s1], perm[s2]);
  Field t = transpose(a, perm);
  Field r = add(a, t);
  return scale(r, 0.5);
}

static void permutations(int k, std::vector<std::vector<int>>& perms,
                         std::vector<int>& cur, std::vector<bool>& used) {
  if (static_cast<int>(cur.size()) == k) {
    perms.push_back(cur);
    return;
  }
  for (int i = 0; i < k; ++i)
    if (!used[i]) {
      used[i] = true;
      cur.push_back(i);
      permutations(k, perms, cur, used);
      cur.pop_back();
      used[i] = false;
    }
}

static int perm_sign(const std::vector<int>& p) {
  int sign = 1;
  std::vector<bool> seen(p.size(), false);
  for (size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    size_t j = i, len = 0;
    while (!seen[j]) {
      seen[j] = true;
      j = p[j];
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

Field antisymmetrize_all(const Field& a) {
  const int k = a.rank();
  std::vector<std::vector<int>> perms;
  std::vector<int> cur;
  std::vector<bool> used(k, false);
  permutations(k, perms, cur, used);
  Field out(a.grid(), k, a.dim(), a.offset());
  double w = 1.0;
  for (int i = 2; i <= k; ++i) w *= i;
  w = 1.0 / w;
  for (const auto& p : perms) {
    Field t = transpose(a, p);
    axpy(out, w * perm_sign(p), t);
  }
  return out;
}

double symmetry_violation(const Field& a, int s1, int s2) {
  std::vector<int> perm(a.rank());
  for (int s = 0; s < a.rank(); ++s) perm[s] = s;
  std::swap(perm[s1], perm[s2]);
  Field t = transpose(a, perm);
  double scl = std::max(linf(a), 1e-300);
  return linf(sub(a, t)) / scl;
}

double antisymmetry_violation(const Field& a) {
  Field t = antisymmetrize_all(a);
  double scl = std::max(linf(a), 1e-300);
  return linf(sub(a, t)) / scl;
}

// ---- derivatives ------------------------------------------------------------

//! Stencil along one active grid axis; periodic wrap.
static void stencil_axis(const Grid& g, const double* f, double* out,
                         int grid_axis) {
  const int N = g.npx;
  const double inv_h = 1.0 / g.h;
  if (g.n_active == 1) {
    if (g.order == 2) {
      for (int i = 0; i < N; ++i)
        out[i] = 0.5 * inv_h * (f[g.wrap(i + 1)] - f[g.wrap(i - 1)]);
    } else {
      const double c = inv_h / 12.0;
      for (int i = 0; i < N; ++i)
        out[i] = c * (-f[g.wrap(i + 2)] + 8.0 * f[g.wrap(i + 1)] -
                      8.0 * f[g.wrap(i - 1)] + f[g.wrap(i - 2)]);
    }
    return;
  }
  // two active axes
  for (int j = 0; j < N; ++j) {
    for (int i = 0; i < N; ++i) {
      auto at = [&](int di, int dj) {
        return f[g.point(g.wrap(i + di), g.wrap(j + dj))];
      };
      double v;
      if (g.order == 2) {
        v = grid_axis == 0 ? 0.5 * inv_h * (at(1, 0) - at(-1, 0))
                           : 0.5 * inv_h * (at(0, 1) - at(0, -1));
      } else {
        const double c = inv_h / 12.0;
        v = grid_axis == 0
                ? c * (-at(2, 0) + 8.0 * at(1, 0) - 8.0 * at(-1, 0) + at(-2, 0))
                : c * (-at(0, 2) + 8.0 * at(0, 1) - 8.0 * at(0, -1) + at(0, -2));
      }
      out[g.point(i, j)] = v;
    }
  }
}

Field partial_derivative(const Field& f, int axis) {
  require(!f.empty(), "partial_derivative: empty field");
  const Grid& g = f.grid();
  require(axis != 0 || f.offset() != 0,
          "partial_derivative: time axis is not gridded; supply the slice "
          "time derivative instead");
  const int spacetime_axis = axis + f.offset();
  require(spacetime_axis >= 1 && spacetime_axis <= g.d - 1,
          "partial_derivative: axis out of range");
  Field out(g, f.rank(), f.dim(), f.offset());
  if (!g.axis_active(spacetime_axis)) return out;  // symmetry-reduced: zero
  const int grid_axis = spacetime_axis - 1;
  for (long c = 0; c < f.ncomp(); ++c)
    stencil_axis(g, f.comp(c), out.comp(c), grid_axis);
  return out;
}

Field grad(const Field& f, const Field* dtf) {
  require(!f.empty(), "grad: empty field");
  const Grid& g = f.grid();
  const bool ambient = f.offset() == 0;
  require(ambient || dtf == nullptr, "grad: sigma fields are static");
  const int ddim = f.dim();
  Field out(g, f.rank() + 1, ddim, f.offset());
  const long block = f.ncomp() * g.npts;
  // derivative index is slot 0: out component = lam * f.ncomp + c
  for (int lam = 0; lam < ddim; ++lam) {
    double* dst = out.raw().data() + lam * block;
    if (ambient && lam == 0) {
      if (dtf) {
        check_same_shape(f, *dtf, "grad: dt field shape mismatch");
        const auto& src = dtf->raw();
        std::copy(src.begin(), src.end(), dst);
      }
      continue;  // static: zero
    }
    Field df = partial_derivative(f, lam);
    std::copy(df.raw().begin(), df.raw().end(), dst);
  }
  return out;
}

Field second_partials(const Field& f, const Field& dtf, const Field& dttf) {
  Field d1 = grad(f, &dtf);
  Field ddt = grad(dtf, &dttf);
  return grad(d1, &ddt);
}

// ---- norms ------------------------------------------------------------------

Norms field_norms(const Field& f) {
  Norms n;
  const auto& d = f.raw();
  long double sq = 0.0;
  for (size_t i = 0; i < d.size(); ++i) {
    const double v = d[i];
    if (!std::isfinite(v)) {
      char buf[128];
      std::snprintf(buf, sizeof(buf),
                    "field_norms: non-finite value at component %ld point %ld",
                    static_cast<long>(i / f.npts()),
                    static_cast<long>(i % f.npts()));
      throw std::runtime_error(buf);
    }
    n.linf = std::max(n.linf, std::fabs(v));
    sq += static_cast<long double>(v) * v;
  }
  n.l2 = d.empty() ? 0.0 : std::sqrt(static_cast<double>(sq / d.size()));
  return n;
}

double linf(const Field& f) {
  double m = 0.0;
  for (double v : f.raw()) m = std::max(m, std::fabs(v));
  return m;
}

bool finite(const Field& f) {
  for (double v : f.raw())
    if (!std::isfinite(v)) return false;
  return true;
}

// ---- jets -------------------------------------------------------------------

JetF JetF::constant(const Field& f) {
  JetF j;
  j.v = f;
  j.d = Field(f.grid(), f.rank(), f.dim(), f.offset());
  return j;
}

JetF jcontract(const JetF& a, const JetF& b,
               const std::vector<std::pair<int, int>>& pairs) {
  JetF r;
  r.v = contract(a.v, b.v, pairs);
  r.d = add(contract(a.d, b.v, pairs), contract(a.v, b.d, pairs));
  return r;
}

JetF jadd(const JetF& a, const JetF& b) { return {add(a.v, b.v), add(a.d, b.d)}; }
JetF jsub(const JetF& a, const JetF& b) { return {sub(a.v, b.v), sub(a.d, b.d)}; }
JetF jscale(const JetF& a, double c) { return {scale(a.v, c), scale(a.d, c)}; }

JetF jmul_scalar(const JetF& a, const JetF& s) {
  JetF r;
  r.v = mul_scalar(a.v, s.v);
  r.d = add(mul_scalar(a.d, s.v), mul_scalar(a.v, s.d));
  return r;
}

JetF jexp_scale(const JetF& s, double c) {
  JetF r;
  r.v = exp_scale(s.v, c);
  r.d = mul_scalar(r.v, scale(s.d, c));
  return r;
}

JetF jtranspose(const JetF& a, const std::vector<int>& perm) {
  return {transpose(a.v, perm), transpose(a.d, perm)};
}

JetF jsymmetrize_pair(const JetF& a, int s1, int s2) {
  return {symmetrize_pair(a.v, s1, s2), symmetrize_pair(a.d, s1, s2)};
}

}  // namespace gee
