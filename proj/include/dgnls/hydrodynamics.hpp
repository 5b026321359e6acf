#pragma once

#include <string>

#include "dgnls/derivative.hpp"
#include "dgnls/field.hpp"

namespace dgnls {

inline constexpr double kDefaultRhoFloor = 1e-30;
inline constexpr double kCoefficientTolerance = 1e-12;

// Coupling constants of the nonlinearity
//   R[psi] = c1 div j / rho + c2 lap rho / rho + c3 j^2/rho^2
//          + c4 j.grad rho / rho^2 + c5 (grad rho)^2 / rho^2,
// with every division by rho floored at rho + rho_floor.
struct DGCoefficients {
  double c1 = 0, c2 = 0, c3 = 0, c4 = 0, c5 = 0;
  double rho_floor = kDefaultRhoFloor;

  bool linear(double tol = kCoefficientTolerance) const;
  // c3 = 0 and c1 + c4 = 0: no signal up to the third time derivative.
  bool werner_satisfied(double tol = kCoefficientTolerance) const;
  // c1 = c3 = c4 = 0 and c2 + 2 c5 = 0: removable by formal linearization.
  bool gisin_free(double tol = kCoefficientTolerance) const;

  DGCoefficients scaled(double s) const { return {c1 * s, c2 * s, c3 * s, c4 * s, c5 * s, rho_floor}; }
};

enum class CouplingClass {
  Linear,
  GisinFree,
  WernerSatisfiedSignaling,
  WernerViolating,
};

CouplingClass classify(const DGCoefficients& c, double tol = kCoefficientTolerance);
std::string to_string(CouplingClass k);

RealField density(const ComplexField& psi);
VectorField current(const ComplexField& psi, const DerivativeEngine& engine);

// Phase gradient computed as j/(rho + floor); equals grad arg(psi) wherever
// rho dominates the floor.  No phase unwrapping involved.
VectorField grad_phase(const ComplexField& psi, const DGCoefficients& coeffs,
                       const DerivativeEngine& engine);

// The index-nu functional R_nu (1..5) with unit coefficient.
RealField r_term(const ComplexField& psi, int index, const DGCoefficients& coeffs,
                 const DerivativeEngine& engine);

// sum_nu c_nu R_nu; real by construction.
RealField r_total(const ComplexField& psi, const DGCoefficients& coeffs,
                  const DerivativeEngine& engine);

// psi -> exp(i lambda ln|psi|) psi; the factor is 1 where |psi|^2 <= floor.
ComplexField gauge_transform(const ComplexField& psi, double lambda,
                             double rho_floor = kDefaultRhoFloor);

// Workspace-reusing core for the integrator hot path.
struct HydroWorkspace {
  RealField rho;
  RealField accum;
  RealField scratch;
  ComplexField dpsi;
  std::vector<RealField> j;
  std::vector<RealField> drho;
};

void density_into(const ComplexField& psi, RealField& rho);
void r_total_into(const ComplexField& psi, const DGCoefficients& coeffs,
                  const DerivativeEngine& engine, RealField& out, HydroWorkspace& ws);

}  // namespace dgnls
