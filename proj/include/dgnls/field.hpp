#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "dgnls/grid.hpp"

namespace dgnls {

using Complex = std::complex<double>;

struct RealField {
  Grid grid;
  std::vector<double> samples;

  RealField() = default;
  explicit RealField(const Grid& g, double fill = 0.0)
      : grid(g), samples(g.total_points(), fill) {}

  std::size_t size() const { return samples.size(); }
  double& operator[](std::size_t i) { return samples[i]; }
  double operator[](std::size_t i) const { return samples[i]; }
};

struct ComplexField {
  Grid grid;
  std::vector<Complex> samples;

  ComplexField() = default;
  explicit ComplexField(const Grid& g, Complex fill = {})
      : grid(g), samples(g.total_points(), fill) {}

  std::size_t size() const { return samples.size(); }
  Complex& operator[](std::size_t i) { return samples[i]; }
  const Complex& operator[](std::size_t i) const { return samples[i]; }
};

// One RealField per axis (2d components on a two-particle grid).
struct VectorField {
  Grid grid;
  std::vector<RealField> components;

  VectorField() = default;
  explicit VectorField(const Grid& g) : grid(g), components(g.axes(), RealField(g)) {}
};

// Visits every grid point in sample order; coords holds one value per axis.
void for_each_point(const Grid& g,
                    const std::function<void(std::size_t, std::span<const double>)>& fn);

RealField make_real_field(const Grid& g,
                          const std::function<double(std::span<const double>)>& fn);
ComplexField make_complex_field(const Grid& g,
                                const std::function<Complex(std::span<const double>)>& fn);

bool all_finite(const RealField& f);
bool all_finite(const ComplexField& f);

// Largest |sample| on the outermost shell of the grid (boundary layer of
// depth `shell` points on every axis).
double boundary_max_abs(const RealField& f, int shell = 1);

// Riemann quadrature  sum * h^axes  with compensated summation.  If the field
// has not decayed below `decay_threshold` on the boundary shell the optional
// warning flag is set; the value is still returned.
double integrate(const RealField& f, bool* boundary_warning = nullptr,
                 double decay_threshold = 1e-12);

// Integrates out all particle-2 axes; result lives on grid.particle1_grid().
RealField marginalize_particle2(const RealField& f);

double max_abs(const RealField& f);
double max_abs(const ComplexField& f);

}  // namespace dgnls
