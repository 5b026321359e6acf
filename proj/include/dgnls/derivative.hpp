#pragma once

#include "dgnls/field.hpp"

namespace dgnls {

enum class DiffBackend {
  FiniteDifference,  // centered stencils, fields treated as zero-padded
  Spectral,          // FFT, periodic on [-L, L)
};

// Partial derivatives, second derivatives and the Laplacian on grid fields.
// The finite-difference backend is exact on sampled polynomials up to the
// stencil order at interior points; the spectral backend is exact on
// band-limited periodic fields.
class DerivativeEngine {
 public:
  explicit DerivativeEngine(DiffBackend backend = DiffBackend::FiniteDifference,
                            int fd_order = 8);

  RealField diff(const RealField& f, int axis) const;
  ComplexField diff(const ComplexField& f, int axis) const;
  RealField second_diff(const RealField& f, int axis) const;
  ComplexField second_diff(const ComplexField& f, int axis) const;
  RealField laplacian(const RealField& f) const;
  ComplexField laplacian(const ComplexField& f) const;

  // Allocation-free variants for hot loops; `out` must match f's grid.
  void diff_into(const RealField& f, int axis, RealField& out) const;
  void diff_into(const ComplexField& f, int axis, ComplexField& out) const;
  void laplacian_into(const ComplexField& f, ComplexField& out) const;
  void laplacian_into(const RealField& f, RealField& out) const;

  // Upper bound on the spectral radius of -Laplacian on this grid; used for
  // integrator stability checks.
  double laplacian_symbol_bound(const Grid& g) const;

  // Half-width of the FD stencil (0 for spectral).
  int stencil_radius() const;

  DiffBackend backend() const { return backend_; }
  int fd_order() const { return fd_order_; }

 private:
  DiffBackend backend_;
  int fd_order_;
};

// In-place DFT over every axis (periodic on [-L, L)); fft_backward applies
// the 1/N normalization.  Used by the split-step propagator.
void fft_forward(ComplexField& f);
void fft_backward(ComplexField& f);

// |k|^2 per flat Fourier-space index, matching fft_forward's layout.
std::vector<double> k_squared_table(const Grid& g);

}  // namespace dgnls
