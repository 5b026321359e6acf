#include "dgnls/grid.hpp"

#include <stdexcept>
#include <string>

namespace dgnls {

Grid build_grid(int dims_per_particle, int points_per_axis, double half_extent) {
  if (dims_per_particle < 1)
    throw std::invalid_argument("build_grid: dims_per_particle must be >= 1");
  if (points_per_axis < 8 || points_per_axis % 2 != 0)
    throw std::invalid_argument("build_grid: points_per_axis must be even and >= 8, got " +
                                std::to_string(points_per_axis));
  if (!(half_extent > 0.0))
    throw std::invalid_argument("build_grid: half_extent must be positive");

  Grid g;
  g.dims_per_particle = dims_per_particle;
  g.axes_count = 2 * dims_per_particle;
  g.points_per_axis = points_per_axis;
  g.half_extent = half_extent;
  g.spacing = 2.0 * half_extent / points_per_axis;
  return g;
}

}  // namespace dgnls
