#include "dgnls/states.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace dgnls {

RealField build_density(const Grid& g, const StateSpec& spec) {
  switch (spec.rho0_kind) {
    case StateSpec::DensityKind::CorrelatedGaussian:
      return make_real_field(g, [&](std::span<const double> x) {
        double q = 0.0;
        for (double xi : x) q += xi * xi;
        q += x[0] * x[g.dims_per_particle];  // bilinear coupling of the two particles
        return std::exp(-q);
      });
    case StateSpec::DensityKind::Gaussian: {
      if (spec.rho0_params.empty())
        throw std::invalid_argument("gaussian density needs at least one width parameter");
      std::vector<double> widths(g.axes());
      for (int a = 0; a < g.axes(); ++a)
        widths[a] = spec.rho0_params[std::min<std::size_t>(a, spec.rho0_params.size() - 1)];
      for (double w : widths)
        if (!(w > 0)) throw std::invalid_argument("gaussian density widths must be positive");
      return make_real_field(g, [&](std::span<const double> x) {
        double q = 0.0;
        for (int a = 0; a < g.axes(); ++a) q += x[a] * x[a] / (2.0 * widths[a] * widths[a]);
        return std::exp(-q);
      });
    }
    case StateSpec::DensityKind::Tabulated: {
      RealField f = load_tabulated_field(g, spec.rho0_path);
      for (double v : f.samples)
        if (v < 0.0) throw std::invalid_argument("tabulated density has negative samples");
      return f;
    }
  }
  throw std::logic_error("unreachable");
}

RealField build_phase(const Grid& g, const StateSpec& spec) {
  switch (spec.phase_kind) {
    case StateSpec::PhaseKind::Zero:
      return RealField(g, 0.0);
    case StateSpec::PhaseKind::Bilinear: {
      const double a = spec.bilinear_coefficient;
      const int p2 = g.dims_per_particle;
      return make_real_field(g, [&](std::span<const double> x) { return a * x[0] * x[p2]; });
    }
    case StateSpec::PhaseKind::Tabulated:
      return load_tabulated_field(g, spec.phase_path);
  }
  throw std::logic_error("unreachable");
}

ComplexField assemble_state(const RealField& rho, const RealField& phase) {
  if (!(rho.grid == phase.grid))
    throw std::invalid_argument("assemble_state: density and phase grids differ");
  ComplexField psi(rho.grid);
  for (std::size_t i = 0; i < psi.size(); ++i) {
    const double r = rho.samples[i];
    if (r < 0.0) throw std::invalid_argument("assemble_state: negative density sample");
    const double amp = std::sqrt(r);
    const double s = phase.samples[i];
    psi.samples[i] = Complex(amp * std::cos(s), amp * std::sin(s));
  }
  return psi;
}

ComplexField build_initial_state(const Grid& g, const StateSpec& spec, double* raw_mass) {
  RealField rho = build_density(g, spec);
  const double mass = integrate(rho);
  if (!(mass > 0.0)) throw std::invalid_argument("initial density has nonpositive mass");
  if (raw_mass != nullptr) *raw_mass = mass;
  const double inv = 1.0 / mass;
  for (double& v : rho.samples) v *= inv;
  return assemble_state(rho, build_phase(g, spec));
}

RealField load_tabulated_field(const Grid& g, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open tabulated field file: " + path);
  RealField f(g);
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!(in >> f.samples[i]))
      throw std::invalid_argument("tabulated field " + path + ": expected " +
                                  std::to_string(f.size()) + " samples, got " +
                                  std::to_string(i));
  }
  double extra;
  if (in >> extra)
    throw std::invalid_argument("tabulated field " + path + ": more samples than grid points");
  return f;
}

}  // namespace dgnls
