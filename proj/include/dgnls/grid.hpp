#pragma once

#include <cstddef>
#include <vector>

namespace dgnls {

// Uniform Cartesian grid over configuration space.  A two-particle grid has
// 2*dims_per_particle axes, each covering [-L, L) with n points; marginal
// (one-particle) fields live on a grid with axes_count == dims_per_particle.
struct Grid {
  int dims_per_particle = 1;
  int axes_count = 2;
  int points_per_axis = 256;
  double half_extent = 8.0;
  double spacing = 0.0625;  // 2L/n

  int axes() const { return axes_count; }
  bool two_particle() const { return axes_count == 2 * dims_per_particle; }

  std::size_t total_points() const {
    std::size_t p = 1;
    for (int a = 0; a < axes_count; ++a) p *= static_cast<std::size_t>(points_per_axis);
    return p;
  }

  // Row-major layout, axis 0 slowest; particle-1 axes come first.
  std::size_t stride(int axis) const {
    std::size_t s = 1;
    for (int a = axis + 1; a < axes_count; ++a) s *= static_cast<std::size_t>(points_per_axis);
    return s;
  }

  double coord(int i) const { return -half_extent + i * spacing; }

  std::vector<double> axis_coords() const {
    std::vector<double> x(points_per_axis);
    for (int i = 0; i < points_per_axis; ++i) x[i] = coord(i);
    return x;
  }

  double cell_volume() const {
    double v = 1.0;
    for (int a = 0; a < axes_count; ++a) v *= spacing;
    return v;
  }

  // Grid for fields marginalized down to particle 1.
  Grid particle1_grid() const {
    Grid g = *this;
    g.axes_count = dims_per_particle;
    return g;
  }

  bool operator==(const Grid&) const = default;
};

Grid build_grid(int dims_per_particle, int points_per_axis, double half_extent);

}  // namespace dgnls
