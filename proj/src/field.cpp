#include "dgnls/field.hpp"

#include <cmath>
#include <stdexcept>

namespace dgnls {

void for_each_point(const Grid& g,
                    const std::function<void(std::size_t, std::span<const double>)>& fn) {
  const int axes = g.axes();
  const int n = g.points_per_axis;
  std::vector<int> idx(axes, 0);
  std::vector<double> coords(axes, g.coord(0));
  const std::size_t total = g.total_points();
  for (std::size_t flat = 0; flat < total; ++flat) {
    fn(flat, coords);
    for (int a = axes - 1; a >= 0; --a) {
      if (++idx[a] < n) {
        coords[a] = g.coord(idx[a]);
        break;
      }
      idx[a] = 0;
      coords[a] = g.coord(0);
    }
  }
}

RealField make_real_field(const Grid& g,
                          const std::function<double(std::span<const double>)>& fn) {
  RealField f(g);
  for_each_point(g, [&](std::size_t i, std::span<const double> x) { f.samples[i] = fn(x); });
  return f;
}

ComplexField make_complex_field(const Grid& g,
                                const std::function<Complex(std::span<const double>)>& fn) {
  ComplexField f(g);
  for_each_point(g, [&](std::size_t i, std::span<const double> x) { f.samples[i] = fn(x); });
  return f;
}

bool all_finite(const RealField& f) {
  for (double v : f.samples)
    if (!std::isfinite(v)) return false;
  return true;
}

bool all_finite(const ComplexField& f) {
  for (const Complex& v : f.samples)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

double boundary_max_abs(const RealField& f, int shell) {
  const Grid& g = f.grid;
  const int n = g.points_per_axis;
  const int axes = g.axes();
  double worst = 0.0;
  std::vector<int> idx(axes, 0);
  const std::size_t total = g.total_points();
  for (std::size_t flat = 0; flat < total; ++flat) {
    bool on_shell = false;
    for (int a = 0; a < axes; ++a) {
      if (idx[a] < shell || idx[a] >= n - shell) {
        on_shell = true;
        break;
      }
    }
    if (on_shell) worst = std::max(worst, std::abs(f.samples[flat]));
    for (int a = axes - 1; a >= 0; --a) {
      if (++idx[a] < n) break;
      idx[a] = 0;
    }
  }
  return worst;
}

double integrate(const RealField& f, bool* boundary_warning, double decay_threshold) {
  if (boundary_warning != nullptr)
    *boundary_warning = boundary_max_abs(f) > decay_threshold;
  // Kahan summation in sample order keeps the reduction deterministic.
  double sum = 0.0, comp = 0.0;
  for (double v : f.samples) {
    const double y = v - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum * f.grid.cell_volume();
}

RealField marginalize_particle2(const RealField& f) {
  const Grid& g = f.grid;
  if (!g.two_particle())
    throw std::invalid_argument("marginalize_particle2: field is not on a two-particle grid");
  const Grid g1 = g.particle1_grid();
  RealField out(g1);
  const std::size_t inner = g.stride(g.dims_per_particle - 1);  // points per particle-2 block
  double vol2 = 1.0;
  for (int a = g.dims_per_particle; a < g.axes(); ++a) vol2 *= g.spacing;
  const std::size_t blocks = out.size();
  for (std::size_t b = 0; b < blocks; ++b) {
    double sum = 0.0, comp = 0.0;
    const double* src = f.samples.data() + b * inner;
    for (std::size_t i = 0; i < inner; ++i) {
      const double y = src[i] - comp;
      const double t = sum + y;
      comp = (t - sum) - y;
      sum = t;
    }
    out.samples[b] = sum * vol2;
  }
  return out;
}

double max_abs(const RealField& f) {
  double m = 0.0;
  for (double v : f.samples) m = std::max(m, std::abs(v));
  return m;
}

double max_abs(const ComplexField& f) {
  double m = 0.0;
  for (const Complex& v : f.samples) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace dgnls
