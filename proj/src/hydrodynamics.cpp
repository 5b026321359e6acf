#include "dgnls/hydrodynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace dgnls {

bool DGCoefficients::linear(double tol) const {
  return std::abs(c1) <= tol && std::abs(c2) <= tol && std::abs(c3) <= tol &&
         std::abs(c4) <= tol && std::abs(c5) <= tol;
}

bool DGCoefficients::werner_satisfied(double tol) const {
  return std::abs(c3) <= tol && std::abs(c1 + c4) <= tol;
}

bool DGCoefficients::gisin_free(double tol) const {
  return std::abs(c1) <= tol && std::abs(c3) <= tol && std::abs(c4) <= tol &&
         std::abs(c2 + 2.0 * c5) <= tol;
}

CouplingClass classify(const DGCoefficients& c, double tol) {
  if (c.linear(tol)) return CouplingClass::Linear;
  if (c.gisin_free(tol)) return CouplingClass::GisinFree;
  if (c.werner_satisfied(tol)) return CouplingClass::WernerSatisfiedSignaling;
  return CouplingClass::WernerViolating;
}

std::string to_string(CouplingClass k) {
  switch (k) {
    case CouplingClass::Linear: return "linear";
    case CouplingClass::GisinFree: return "gisin_free";
    case CouplingClass::WernerSatisfiedSignaling: return "werner_satisfied_signaling";
    case CouplingClass::WernerViolating: return "werner_violating";
  }
  return "unknown";
}

void density_into(const ComplexField& psi, RealField& rho) {
  rho.grid = psi.grid;
  rho.samples.resize(psi.size());
  const Complex* p = psi.samples.data();
  double* r = rho.samples.data();
  const std::ptrdiff_t total = static_cast<std::ptrdiff_t>(psi.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < total; ++i) r[i] = std::norm(p[i]);
}

RealField density(const ComplexField& psi) {
  RealField rho;
  density_into(psi, rho);
  return rho;
}

VectorField current(const ComplexField& psi, const DerivativeEngine& engine) {
  VectorField j(psi.grid);
  ComplexField dpsi;
  for (int a = 0; a < psi.grid.axes(); ++a) {
    engine.diff_into(psi, a, dpsi);
    const Complex* p = psi.samples.data();
    const Complex* d = dpsi.samples.data();
    double* out = j.components[a].samples.data();
    const std::ptrdiff_t total = static_cast<std::ptrdiff_t>(psi.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < total; ++i)
      out[i] = std::imag(std::conj(p[i]) * d[i]);
  }
  return j;
}

VectorField grad_phase(const ComplexField& psi, const DGCoefficients& coeffs,
                       const DerivativeEngine& engine) {
  VectorField j = current(psi, engine);
  RealField rho = density(psi);
  const double eps = coeffs.rho_floor;
  for (int a = 0; a < psi.grid.axes(); ++a) {
    double* v = j.components[a].samples.data();
    const double* r = rho.samples.data();
    const std::ptrdiff_t total = static_cast<std::ptrdiff_t>(psi.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < total; ++i) v[i] /= (r[i] + eps);
  }
  return j;
}

RealField r_term(const ComplexField& psi, int index, const DGCoefficients& coeffs,
                 const DerivativeEngine& engine) {
  if (index < 1 || index > 5) throw std::invalid_argument("r_term: index must be in 1..5");
  DGCoefficients unit;
  unit.rho_floor = coeffs.rho_floor;
  switch (index) {
    case 1: unit.c1 = 1; break;
    case 2: unit.c2 = 1; break;
    case 3: unit.c3 = 1; break;
    case 4: unit.c4 = 1; break;
    case 5: unit.c5 = 1; break;
  }
  return r_total(psi, unit, engine);
}

void r_total_into(const ComplexField& psi, const DGCoefficients& coeffs,
                  const DerivativeEngine& engine, RealField& out, HydroWorkspace& ws) {
  const Grid& g = psi.grid;
  const std::ptrdiff_t total = static_cast<std::ptrdiff_t>(psi.size());
  out.grid = g;
  out.samples.assign(psi.size(), 0.0);

  const bool need_j = coeffs.c1 != 0 || coeffs.c3 != 0 || coeffs.c4 != 0;
  const bool need_drho = coeffs.c4 != 0 || coeffs.c5 != 0;
  if (!need_j && !need_drho && coeffs.c2 == 0) return;

  density_into(psi, ws.rho);
  const double* rho = ws.rho.samples.data();
  const double eps = coeffs.rho_floor;
  const int axes = g.axes();

  if (need_j) {
    ws.j.assign(axes, RealField(g));
    for (int a = 0; a < axes; ++a) {
      engine.diff_into(psi, a, ws.dpsi);
      const Complex* p = psi.samples.data();
      const Complex* d = ws.dpsi.samples.data();
      double* ja = ws.j[a].samples.data();
#pragma omp parallel for schedule(static)
      for (std::ptrdiff_t i = 0; i < total; ++i) ja[i] = std::imag(std::conj(p[i]) * d[i]);
    }
  }

  double* acc = out.samples.data();

  if (coeffs.c1 != 0) {
    // div j / rho
    for (int a = 0; a < axes; ++a) {
      engine.diff_into(ws.j[a], a, ws.scratch);
      const double* s = ws.scratch.samples.data();
      const double c1 = coeffs.c1;
#pragma omp parallel for schedule(static)
      for (std::ptrdiff_t i = 0; i < total; ++i) acc[i] += c1 * s[i] / (rho[i] + eps);
    }
  }

  if (coeffs.c2 != 0) {
    engine.laplacian_into(ws.rho, ws.accum);
    const double* s = ws.accum.samples.data();
    const double c2 = coeffs.c2;
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < total; ++i) acc[i] += c2 * s[i] / (rho[i] + eps);
  }

  if (need_drho) {
    ws.drho.assign(axes, RealField(g));
    for (int a = 0; a < axes; ++a) engine.diff_into(ws.rho, a, ws.drho[a]);
  }

  if (coeffs.c3 != 0 || coeffs.c4 != 0 || coeffs.c5 != 0) {
    const double c3 = coeffs.c3, c4 = coeffs.c4, c5 = coeffs.c5;
    for (int a = 0; a < axes; ++a) {
      const double* ja = need_j ? ws.j[a].samples.data() : nullptr;
      const double* da = need_drho ? ws.drho[a].samples.data() : nullptr;
#pragma omp parallel for schedule(static)
      for (std::ptrdiff_t i = 0; i < total; ++i) {
        const double den = rho[i] + eps;
        double num = 0.0;
        if (c3 != 0) num += c3 * ja[i] * ja[i];
        if (c4 != 0) num += c4 * ja[i] * da[i];
        if (c5 != 0) num += c5 * da[i] * da[i];
        acc[i] += num / (den * den);
      }
    }
  }
}

RealField r_total(const ComplexField& psi, const DGCoefficients& coeffs,
                  const DerivativeEngine& engine) {
  RealField out;
  HydroWorkspace ws;
  r_total_into(psi, coeffs, engine, out, ws);
  return out;
}

ComplexField gauge_transform(const ComplexField& psi, double lambda, double rho_floor) {
  ComplexField out(psi.grid);
  const Complex* p = psi.samples.data();
  Complex* q = out.samples.data();
  const std::ptrdiff_t total = static_cast<std::ptrdiff_t>(psi.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < total; ++i) {
    const double m2 = std::norm(p[i]);
    if (m2 <= rho_floor) {
      q[i] = p[i];
    } else {
      const double theta = 0.5 * lambda * std::log(m2);
      q[i] = p[i] * Complex(std::cos(theta), std::sin(theta));
    }
  }
  return out;
}

}  // namespace dgnls
