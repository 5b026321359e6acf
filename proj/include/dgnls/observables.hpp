#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "dgnls/derivative.hpp"
#include "dgnls/field.hpp"
#include "dgnls/hydrodynamics.hpp"

namespace dgnls {

struct TimeSeries {
  std::vector<double> times;   // strictly increasing, starting at 0
  std::vector<double> values;

  std::size_t size() const { return times.size(); }
  void validate() const;
};

// Particle-1 position density: integrate |psi|^2 over the particle-2 axes.
RealField marginal_rho1(const ComplexField& psi);

// First moment of the first particle-1 coordinate, int x1 rho dx.
double moment_x1(const ComplexField& psi);

// d<x1>/dt via the first Ehrenfest relation: Im int conj(psi) d1 psi.
double ehrenfest_rate(const ComplexField& psi, const DerivativeEngine& engine);

// d^2<x1>/dt^2 for a particle-2-only potential: -int rho d1 R[psi].
double second_rate(const ComplexField& psi, const DGCoefficients& coeffs,
                   const DerivativeEngine& engine);

class FitConditionError : public std::runtime_error {
 public:
  explicit FitConditionError(const std::string& what) : std::runtime_error(what) {}
};

struct TaylorFit {
  std::vector<double> coefficients;   // a_0 .. a_order, in powers of t
  std::vector<double> uncertainties;  // full-vs-half-window discrepancy per a_k
  double condition = 0.0;

  double derivative(int k) const;              // k! a_k
  double derivative_uncertainty(int k) const;  // k! * uncertainty_k
};

// Least-squares polynomial fit of the series on [0, window].  Requires at
// least 3*(order+1) samples in the window; throws FitConditionError when the
// scaled Vandermonde condition number exceeds 1e12.  Uncertainties come from
// repeating the fit on [0, window/2].
TaylorFit fit_taylor(const TimeSeries& series, int order, double window);

void write_timeseries_csv(const std::string& path, const TimeSeries& series,
                          const std::vector<std::string>& header_comments = {});

}  // namespace dgnls
