#pragma once

#include <random>
#include <vector>

#include "gee/field.hpp"
#include "gee/grid.hpp"

namespace gee {

//! Closed-form fields built from separable trig modes
//!   amp * cos(w t + a) * cos(k1 x1 + b1) * cos(k2 x2 + b2)
//! so that first and second partials are exact (cos is closed under d/dz).
//! Spatial wavenumbers are integer multiples of 2 pi / L, keeping every mode
//! periodic on the grid.

struct TrigFactor {
  double freq = 0.0;   // 0 means the constant factor 1 (with phase 0)
  double phase = 0.0;
  double value(double v) const;
  double d1(double v) const;
  double d2(double v) const;
};

struct TrigMode {
  double amp = 0.0;
  TrigFactor t, x1, x2;
};

class AnalyticScalar {
 public:
  AnalyticScalar() = default;

  void add_constant(double c);
  void add_mode(const TrigMode& m) { modes_.push_back(m); }

  double value(double t, double x1, double x2) const;
  double d1(int mu, double t, double x1, double x2) const;
  double d2(int mu, int nu, double t, double x1, double x2) const;

  AnalyticScalar scaled(double f) const;

  bool empty() const { return modes_.empty(); }

 private:
  std::vector<TrigMode> modes_;
};

//! A tensor with one AnalyticScalar per component; symmetry is imposed at
//! construction time by the factory functions.
class AnalyticTensor {
 public:
  AnalyticTensor() = default;
  AnalyticTensor(int rank, int dim);

  int rank() const { return rank_; }
  int dim() const { return dim_; }
  AnalyticScalar& comp(long c) { return comps_[c]; }
  const AnalyticScalar& comp(long c) const { return comps_[c]; }
  long ncomp() const { return static_cast<long>(comps_.size()); }

  Field sample(const Grid& g, double t) const;
  //! All first partials, derivative slot first (time uses the exact d/dt).
  Field sample_grad(const Grid& g, double t) const;
  //! All second partials, two derivative slots first.
  Field sample_grad2(const Grid& g, double t) const;
  Field sample_dt(const Grid& g, double t) const;
  Field sample_dtt(const Grid& g, double t) const;

 private:
  int rank_ = 0, dim_ = 0;
  std::vector<AnalyticScalar> comps_;
};

//! Random smooth analytic families (deterministic under a fixed seed).
AnalyticScalar random_scalar(std::mt19937& rng, const Grid& g, double amp,
                             bool time_dependent = true);
//! eta + random symmetric perturbation of the given amplitude
AnalyticTensor random_metric(std::mt19937& rng, const Grid& g, double amp);
//! random symmetric (0,2) perturbation (no eta)
AnalyticTensor random_sym2(std::mt19937& rng, const Grid& g, double amp);
//! random fully antisymmetric p-form
AnalyticTensor random_form(std::mt19937& rng, const Grid& g, int p, double amp);

//! flat Minkowski metric as an analytic tensor
AnalyticTensor minkowski(int dim);

}  // namespace gee
