#include <cmath>

#include "doctest.h"
#include "gee/field.hpp"
#include "gee/grid.hpp"

using namespace gee;

namespace {
constexpr double kTwoPi = 6.2831853071795864769;

Grid small(int pts, int order = 4, int n_active = 1, int d = 4) {
  GridConfig c;
  c.dimension = d;
  c.n_active = n_active;
  c.points_per_axis = pts;
  c.stencil_order = order;
  return build_grid(c);
}
}  // namespace

TEST_CASE("build_grid computes spacing and validates input") {
  GridConfig c;
  c.dimension = 4;
  c.points_per_axis = 64;
  Grid g = build_grid(c);
  CHECK(g.h == doctest::Approx(kTwoPi / 64).epsilon(1e-15));

  c.dimension = 2;
  CHECK_THROWS_WITH_AS(build_grid(c), doctest::Contains("dimension must be >= 3"),
                       std::invalid_argument);

  c.dimension = 10;
  c.n_active = 2;
  c.points_per_axis = 32;
  CHECK_NOTHROW(build_grid(c));  // supergravity dimension

  c.points_per_axis = 5;
  CHECK_THROWS(build_grid(c));
  c.points_per_axis = 32;
  c.axis_length = -1.0;
  CHECK_THROWS(build_grid(c));
}

TEST_CASE("derivative of a constant vanishes to roundoff") {
  Grid g = small(32);
  Field f = Field::scalar(g);
  f.fill(3.7);
  Field df = partial_derivative(f, 1);
  CHECK(linf(df) < 1e-13);
}

TEST_CASE("time axis is not gridded") {
  Grid g = small(32);
  Field f = Field::scalar(g);
  CHECK_THROWS_WITH_AS(partial_derivative(f, 0),
                       doctest::Contains("time axis is not gridded"),
                       std::runtime_error);
}

TEST_CASE("inactive axis derivative is identically zero") {
  Grid g = small(32, 4, 1, 4);
  Field f = Field::scalar(g);
  for (long p = 0; p < g.npts; ++p) f.at(0, p) = std::sin(g.coord(p, 1));
  CHECK(linf(partial_derivative(f, 2)) == 0.0);
  CHECK(linf(partial_derivative(f, 3)) == 0.0);
}

TEST_CASE("stencil accuracy and measured order on trig fields") {
  for (int order : {2, 4}) {
    double err[2];
    int idx = 0;
    for (int pts : {32, 64}) {
      Grid g = small(pts, order);
      Field f = Field::scalar(g);
      for (long p = 0; p < g.npts; ++p)
        f.at(0, p) = std::sin(kTwoPi * g.coord(p, 1) / g.length);
      Field df = partial_derivative(f, 1);
      double worst = 0.0;
      for (long p = 0; p < g.npts; ++p) {
        const double exact =
            kTwoPi / g.length * std::cos(kTwoPi * g.coord(p, 1) / g.length);
        worst = std::max(worst, std::fabs(df.at(0, p) - exact));
      }
      err[idx++] = worst;
    }
    const double measured = std::log2(err[0] / err[1]);
    CHECK(measured == doctest::Approx(order).epsilon(0.3 / order));
  }
}

TEST_CASE("distinct active axes commute to roundoff") {
  Grid g = small(24, 4, 2, 4);
  Field f = Field::scalar(g);
  for (long p = 0; p < g.npts; ++p)
    f.at(0, p) = std::sin(g.coord(p, 1)) * std::cos(2.0 * g.coord(p, 2)) +
                 0.3 * std::cos(g.coord(p, 1) + g.coord(p, 2));
  Field dxy = partial_derivative(partial_derivative(f, 1), 2);
  Field dyx = partial_derivative(partial_derivative(f, 2), 1);
  CHECK(linf(sub(dxy, dyx)) < 1e-12);
}

TEST_CASE("derivative is linear") {
  Grid g = small(32);
  Field f = Field::scalar(g), h = Field::scalar(g);
  for (long p = 0; p < g.npts; ++p) {
    f.at(0, p) = std::sin(g.coord(p, 1));
    h.at(0, p) = std::cos(2.0 * g.coord(p, 1));
  }
  Field lhs = partial_derivative(add(scale(f, 2.5), scale(h, -1.25)), 1);
  Field rhs = add(scale(partial_derivative(f, 1), 2.5),
                  scale(partial_derivative(h, 1), -1.25));
  CHECK(linf(sub(lhs, rhs)) < 1e-13);
}

TEST_CASE("field norms: zero, constant, spike") {
  Grid g = small(32);
  Field z = Field::scalar(g);
  Norms nz = field_norms(z);
  CHECK(nz.linf == 0.0);
  CHECK(nz.l2 == 0.0);

  Field c = Field::scalar(g);
  c.fill(-2.0);
  Norms nc = field_norms(c);
  CHECK(nc.linf == 2.0);
  CHECK(nc.l2 == doctest::Approx(2.0).epsilon(1e-14));

  Field s(g, 1, g.d, 0);  // d components over the grid
  s.at(2, 5) = 1.0;
  Norms ns = field_norms(s);
  CHECK(ns.linf == 1.0);
  CHECK(ns.l2 == doctest::Approx(1.0 / std::sqrt(32.0 * 4.0)).epsilon(1e-13));
}

TEST_CASE("norms reject NaN with location info") {
  Grid g = small(32);
  Field f = Field::scalar(g);
  f.at(0, 7) = std::nan("");
  CHECK_THROWS_WITH_AS(field_norms(f), doctest::Contains("point 7"),
                       std::runtime_error);
}
