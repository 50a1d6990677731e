#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gee/grid.hpp"

namespace gee {

//! Dense component storage for a tensor over the grid: one real value per
//! grid point per component. Components are stored comp-major (each
//! component is a contiguous block of grid points) with row-major component
//! flattening, e.g. T_{mu nu} -> comp = mu*dim + nu.
//!
//! `dim` is the index range; `offset` is the spacetime axis corresponding to
//! index value 0. Ambient tensors have dim = d, offset = 0 (index 0 = time).
//! Hypersurface tensors have dim = d-1, offset = 1 (index 0 = x^1).
class Field {
 public:
  Field() = default;
  Field(const Grid& grid, int rank, int dim, int offset = 0);

  static Field scalar(const Grid& g) { return Field(g, 0, g.d, 0); }
  static Field ambient(const Grid& g, int rank) { return Field(g, rank, g.d, 0); }
  static Field sigma(const Grid& g, int rank) { return Field(g, rank, g.d - 1, 1); }

  int rank() const { return rank_; }
  int dim() const { return dim_; }
  int offset() const { return offset_; }
  long ncomp() const { return ncomp_; }
  long npts() const { return grid_.npts; }
  const Grid& grid() const { return grid_; }
  bool empty() const { return grid_.npts == 0; }

  double* comp(long c) { return data_.data() + c * npts(); }
  const double* comp(long c) const { return data_.data() + c * npts(); }

  double& at(long c, long p) { return data_[c * npts() + p]; }
  double at(long c, long p) const { return data_[c * npts() + p]; }

  // Row-major component index from tensor indices.
  long idx(std::initializer_list<int> is) const {
    long c = 0;
    for (int i : is) c = c * dim_ + i;
    return c;
  }
  template <typename It>
  long idx_range(It begin, It end) const {
    long c = 0;
    for (It it = begin; it != end; ++it) c = c * dim_ + *it;
    return c;
  }

  double& operator()(std::initializer_list<int> is, long p) { return at(idx(is), p); }
  double operator()(std::initializer_list<int> is, long p) const { return at(idx(is), p); }

  std::vector<double>& raw() { return data_; }
  const std::vector<double>& raw() const { return data_; }

  void fill(double v);

 private:
  Grid grid_;
  int rank_ = 0;
  int dim_ = 0;
  int offset_ = 0;
  long ncomp_ = 0;
  std::vector<double> data_;
};

// ---- arithmetic -----------------------------------------------------------

Field add(const Field& a, const Field& b);
Field sub(const Field& a, const Field& b);
Field scale(const Field& a, double c);
void axpy(Field& y, double a, const Field& x);  // y += a*x
// pointwise multiply every component of a by the scalar field s
Field mul_scalar(const Field& a, const Field& s);
// pointwise exp(c * s) of a scalar field
Field exp_scale(const Field& s, double c);

// ---- contraction engine ---------------------------------------------------

//! General contraction of two tensors over the named slot pairs (possibly
//! none, which yields the outer product). Free slots of `a` come first in
//! the result, then free slots of `b`. Both fields must share grid and dim.
Field contract(const Field& a, const Field& b,
               const std::vector<std::pair<int, int>>& pairs);

//! Contraction of a tensor with itself-style single trace over two slots of
//! one tensor is not needed; traces always go through a metric.

// ---- slot permutations / (anti)symmetrization ------------------------------

Field transpose(const Field& a, const std::vector<int>& perm);  // result slot i = input slot perm[i]
Field symmetrize_pair(const Field& a, int s1, int s2);
Field antisymmetrize_all(const Field& a);  // normalized, weight 1/rank!

// relative deviation from declared symmetry, roundoff check
double symmetry_violation(const Field& a, int s1, int s2);
double antisymmetry_violation(const Field& a);

// ---- derivatives ----------------------------------------------------------

//! Centered finite-difference derivative along ambient spacetime axis
//! `axis` (1..d-1 for ambient fields; for sigma fields the axis is the
//! index value + offset). Inactive axes give an identically zero field.
//! axis 0 (time) is not gridded and throws.
Field partial_derivative(const Field& f, int axis);

//! All first partials, derivative index FIRST. For ambient fields the
//! derivative index ranges over 0..d-1 and `dtf` supplies the time slot
//! (nullptr means static, i.e. zero). For sigma fields the derivative
//! ranges over the hypersurface axes only and dtf must be null.
Field grad(const Field& f, const Field* dtf = nullptr);

//! Full second-partial bundle (two derivative slots first) of an ambient
//! field from its slice time-derivative data.
Field second_partials(const Field& f, const Field& dtf, const Field& dttf);

// ---- norms ----------------------------------------------------------------

struct Norms {
  double linf = 0.0;
  double l2 = 0.0;  // root mean square over points and components
};

//! Max-abs and RMS over all points and components. NaN/Inf anywhere is an
//! error carrying the first offending component/point.
Norms field_norms(const Field& f);
double linf(const Field& f);

bool finite(const Field& f);

// ---- value + time-derivative jets (Leibniz algebra) ------------------------

//! Pair (value, d/dt value) used to propagate exact time derivatives
//! through pointwise tensor algebra via the product rule.
struct JetF {
  Field v;
  Field d;
  static JetF constant(const Field& f);
};

JetF jcontract(const JetF& a, const JetF& b,
               const std::vector<std::pair<int, int>>& pairs);
JetF jadd(const JetF& a, const JetF& b);
JetF jsub(const JetF& a, const JetF& b);
JetF jscale(const JetF& a, double c);
JetF jmul_scalar(const JetF& a, const JetF& s);
JetF jexp_scale(const JetF& s, double c);  // jet of exp(c*s), s scalar
JetF jtranspose(const JetF& a, const std::vector<int>& perm);
JetF jsymmetrize_pair(const JetF& a, int s1, int s2);

}  // namespace gee
