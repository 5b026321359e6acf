#pragma once

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dgnls/derivative.hpp"
#include "dgnls/field.hpp"
#include "dgnls/hydrodynamics.hpp"
#include "dgnls/observables.hpp"

namespace dgnls {

// Potential acting on particle 2 only, switched on at t = 0 and constant in
// time afterwards.
struct PotentialSpec {
  enum class Kind { Zero, PolynomialInX2, Harmonic, Tabulated };
  struct Window {
    enum class Kind { None, SmoothCutoff };
    Kind kind = Kind::None;
    double radius = 0.0;  // chi == 1 for r <= radius
    double width = 0.0;   // chi == 0 for r >= radius + width, C^2 ramp between
  };

  Kind kind = Kind::Zero;
  std::vector<double> parameters;  // polynomial coefficients (ascending) or {k}
  std::string table_path;
  Window window;

  static PotentialSpec zero() { return PotentialSpec{}; }
  static PotentialSpec polynomial_x2(std::vector<double> coeffs,
                                     Window window = Window{});
  static PotentialSpec harmonic(double strength, Window window = Window{});

  // Samples V on the grid, applying the window.  Tabulated potentials are
  // rejected if they vary along any particle-1 axis.
  RealField realize(const Grid& g) const;

  bool is_zero() const { return kind == Kind::Zero; }
  std::string describe() const;
};

struct IntegratorConfig {
  enum class Scheme { Rk4Full, StrangSplit };
  double dt = 1e-4;
  double t_final = 0.2;
  Scheme scheme = Scheme::Rk4Full;
  int record_stride = 10;
};

class SolverAbort : public std::runtime_error {
 public:
  SolverAbort(const std::string& what, long step, double time)
      : std::runtime_error(what), step(step), time(time) {}
  long step;
  double time;
};

struct ScalarObserver {
  std::string name;
  std::function<double(const ComplexField&)> fn;
};

struct FieldObserver {
  std::string name;
  std::function<std::vector<double>(const ComplexField&)> fn;
};

struct Observers {
  std::vector<ScalarObserver> scalars;
  std::vector<FieldObserver> fields;
};

struct Trajectory {
  std::vector<double> times;
  std::map<std::string, std::vector<double>> scalars;
  std::map<std::string, std::vector<std::vector<double>>> fields;

  TimeSeries series(const std::string& name) const;
};

// dPsi/dt = -i [ (-1/2 lap + V) psi + R[psi] psi ].
ComplexField rhs(const ComplexField& psi, const RealField& V, const DGCoefficients& coeffs,
                 const DerivativeEngine& engine);

// One integrator step (no stability bookkeeping; evolve() adds that).
ComplexField step(const ComplexField& psi, const RealField& V, const DGCoefficients& coeffs,
                  double dt, const DerivativeEngine& engine,
                  IntegratorConfig::Scheme scheme = IntegratorConfig::Scheme::Rk4Full);

// Integrates psi0 under the time-constant potential, recording observer
// outputs every record_stride steps (the t = 0 record is taken before any
// step).  psi0 must be normalized to unit mass within 1e-10.
Trajectory evolve(const ComplexField& psi0, const PotentialSpec& potential,
                  const DGCoefficients& coeffs, const IntegratorConfig& cfg,
                  const Observers& observers, const DerivativeEngine& engine);

}  // namespace dgnls
