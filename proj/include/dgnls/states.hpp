#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dgnls/field.hpp"

namespace dgnls {

// Initial-state recipe: a density profile and a phase profile.  The built
// state is normalized to unit mass; psi = sqrt(rho/N) * exp(i S).
struct StateSpec {
  enum class DensityKind {
    CorrelatedGaussian,  // exp(-|x|^2 - x1 x2), the bilinearly coupled pair
    Gaussian,            // product of per-axis Gaussians, params = widths
    Tabulated,
  };
  enum class PhaseKind {
    Zero,
    Bilinear,  // S = a * x1 * x2 (first axis of each particle)
    Tabulated,
  };

  DensityKind rho0_kind = DensityKind::CorrelatedGaussian;
  std::vector<double> rho0_params;
  std::string rho0_path;

  PhaseKind phase_kind = PhaseKind::Bilinear;
  double bilinear_coefficient = 1.0;
  std::string phase_path;
};

RealField build_density(const Grid& g, const StateSpec& spec);
RealField build_phase(const Grid& g, const StateSpec& spec);

// Normalizes the density to unit mass and attaches the phase.  If
// raw_mass is non-null it receives the unnormalized integral of rho.
ComplexField build_initial_state(const Grid& g, const StateSpec& spec,
                                 double* raw_mass = nullptr);

// Assembles psi = sqrt(rho) * exp(i S) from explicit fields (test helper and
// tabulated path); rho must be nonnegative.
ComplexField assemble_state(const RealField& rho, const RealField& phase);

// Plain text field format: whitespace-separated samples in row-major order.
RealField load_tabulated_field(const Grid& g, const std::string& path);

}  // namespace dgnls
