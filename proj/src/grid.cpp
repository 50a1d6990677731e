#include "gee/grid.hpp"

namespace gee {

Grid::Grid(const GridConfig& cfg) {
  d = cfg.dimension;
  n_active = cfg.n_active;
  npx = cfg.points_per_axis;
  length = cfg.axis_length;
  order = cfg.stencil_order;
  h = length / npx;
  npts = 1;
  for (int a = 0; a < n_active; ++a) npts *= npx;
}

Grid build_grid(const GridConfig& cfg) {
  if (cfg.dimension < 3)
    throw std::invalid_argument("build_grid: dimension must be >= 3 (kappa = 1/(d-2))");
  if (cfg.n_active < 1 || cfg.n_active > 2)
    throw std::invalid_argument("build_grid: n_active must be 1 or 2");
  if (cfg.n_active > cfg.dimension - 1)
    throw std::invalid_argument("build_grid: n_active exceeds spatial dimension");
  if (cfg.stencil_order != 2 && cfg.stencil_order != 4)
    throw std::invalid_argument("build_grid: stencil order must be 2 or 4");
  if (cfg.points_per_axis < 2 * cfg.stencil_order + 1)
    throw std::invalid_argument("build_grid: need at least 2p+1 points per axis");
  if (!(cfg.axis_length > 0.0))
    throw std::invalid_argument("build_grid: axis length must be positive");
  return Grid(cfg);
}

}  // namespace gee
