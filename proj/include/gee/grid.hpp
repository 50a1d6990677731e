#pragma once

#include <array>
#include <stdexcept>
#include <string>

namespace gee {

struct GridConfig {
  int dimension = 4;       // spacetime dimension d
  int n_active = 1;        // spatial axes along which fields vary (1 or 2)
  int points_per_axis = 64;
  double axis_length = 6.283185307179586476925286766559;  // 2*pi
  int stencil_order = 4;   // p in {2, 4}
};

//! Uniform periodic spatial lattice. Time is continuous (method of lines);
//! spatial axes beyond n_active carry a symmetry reduction: fields are
//! constant along them, but all d tensor components are retained.
class Grid {
 public:
  Grid() = default;
  explicit Grid(const GridConfig& cfg);

  int d = 0;            // spacetime dimension
  int n_active = 0;     // number of active spatial axes
  int npx = 0;          // points per active axis
  double length = 0.0;  // axis length
  double h = 0.0;       // spacing
  int order = 0;        // stencil order p
  long npts = 0;        // total points = npx^n_active

  // Ambient spacetime axis a (1..d-1) is active iff a <= n_active.
  bool axis_active(int spacetime_axis) const {
    return spacetime_axis >= 1 && spacetime_axis <= n_active;
  }

  int wrap(int i) const {
    i %= npx;
    return i < 0 ? i + npx : i;
  }

  long point(int i, int j = 0) const { return i + static_cast<long>(npx) * j; }

  std::array<int, 2> ij(long p) const {
    return {static_cast<int>(p % npx), static_cast<int>(p / npx)};
  }

  // Coordinate along active axis a in {1..n_active}.
  double coord(long p, int a) const {
    auto c = ij(p);
    return h * (a == 1 ? c[0] : c[1]);
  }

  bool operator==(const Grid& o) const {
    return d == o.d && n_active == o.n_active && npx == o.npx &&
           length == o.length && order == o.order;
  }
};

//! Validates config and constructs the grid. Rejects d < 3 (kappa = 1/(d-2)
//! degenerates), non-positive lengths, and grids too small for the stencil.
Grid build_grid(const GridConfig& cfg);

}  // namespace gee
