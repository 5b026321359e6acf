#include "dgnls/derivative.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace dgnls {

namespace {

// Centered stencil weights; index k-1 holds the weight of f(x +- k h).
struct Stencil {
  int radius;
  double center;      // second-derivative center weight (0 for first derivative)
  double w[4];
};

const Stencil& first_stencil(int order) {
  static const Stencil s2{1, 0.0, {1.0 / 2, 0, 0, 0}};
  static const Stencil s4{2, 0.0, {2.0 / 3, -1.0 / 12, 0, 0}};
  static const Stencil s6{3, 0.0, {3.0 / 4, -3.0 / 20, 1.0 / 60, 0}};
  static const Stencil s8{4, 0.0, {4.0 / 5, -1.0 / 5, 4.0 / 105, -1.0 / 280}};
  switch (order) {
    case 2: return s2;
    case 4: return s4;
    case 6: return s6;
    case 8: return s8;
  }
  throw std::invalid_argument("DerivativeEngine: fd_order must be one of 2,4,6,8");
}

const Stencil& second_stencil(int order) {
  static const Stencil s2{1, -2.0, {1.0, 0, 0, 0}};
  static const Stencil s4{2, -5.0 / 2, {4.0 / 3, -1.0 / 12, 0, 0}};
  static const Stencil s6{3, -49.0 / 18, {3.0 / 2, -3.0 / 20, 1.0 / 90, 0}};
  static const Stencil s8{4, -205.0 / 72, {8.0 / 5, -1.0 / 5, 8.0 / 315, -1.0 / 560}};
  switch (order) {
    case 2: return s2;
    case 4: return s4;
    case 6: return s6;
    case 8: return s8;
  }
  throw std::invalid_argument("DerivativeEngine: fd_order must be one of 2,4,6,8");
}

// Applies a centered stencil along `axis`, treating the field as zero outside
// the grid.  Antisymmetric taps (first derivative) use f[i+k]-f[i-k],
// symmetric taps (second derivative) f[i+k]+f[i-k] plus a center term.
template <typename T, bool Antisymmetric>
void apply_stencil(const T* in, T* out, const Grid& g, int axis, const Stencil& st,
                   double scale) {
  const int n = g.points_per_axis;
  const int r = st.radius;
  const std::ptrdiff_t s = static_cast<std::ptrdiff_t>(g.stride(axis));
  const std::size_t total = g.total_points();

  if (s == 1) {
    const std::ptrdiff_t lines = static_cast<std::ptrdiff_t>(total) / n;
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t line = 0; line < lines; ++line) {
      const T* src = in + line * n;
      T* dst = out + line * n;
      for (int i = 0; i < n; ++i) {
        T acc = Antisymmetric ? T{} : T(st.center * scale) * src[i];
        for (int k = 1; k <= r; ++k) {
          const T up = (i + k < n) ? src[i + k] : T{};
          const T dn = (i - k >= 0) ? src[i - k] : T{};
          acc += T(st.w[k - 1] * scale) * (Antisymmetric ? (up - dn) : (up + dn));
        }
        dst[i] = acc;
      }
    }
    return;
  }

  // Strided axis: each (block, row) pair owns an s-contiguous run.
  const std::ptrdiff_t block = static_cast<std::ptrdiff_t>(n) * s;
  const std::ptrdiff_t repeat = static_cast<std::ptrdiff_t>(total) / block;
  const std::ptrdiff_t rows = repeat * n;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t row = 0; row < rows; ++row) {
    const std::ptrdiff_t b = row / n;
    const int i = static_cast<int>(row % n);
    const T* base = in + b * block;
    T* dst = out + b * block + static_cast<std::ptrdiff_t>(i) * s;
    if (!Antisymmetric) {
      const T c = T(st.center * scale);
      const T* src = base + static_cast<std::ptrdiff_t>(i) * s;
      for (std::ptrdiff_t j = 0; j < s; ++j) dst[j] = c * src[j];
    } else {
      for (std::ptrdiff_t j = 0; j < s; ++j) dst[j] = T{};
    }
    for (int k = 1; k <= r; ++k) {
      const T c = T(st.w[k - 1] * scale);
      if (i + k < n) {
        const T* src = base + static_cast<std::ptrdiff_t>(i + k) * s;
        for (std::ptrdiff_t j = 0; j < s; ++j) dst[j] += c * src[j];
      }
      if (i - k >= 0) {
        const T* src = base + static_cast<std::ptrdiff_t>(i - k) * s;
        if (Antisymmetric) {
          for (std::ptrdiff_t j = 0; j < s; ++j) dst[j] -= c * src[j];
        } else {
          for (std::ptrdiff_t j = 0; j < s; ++j) dst[j] += c * src[j];
        }
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Spectral backend.  One cached FFTW plan pair per line length; lines are
// copied through a scratch buffer, so plans never alias caller memory.

struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

std::mutex g_plan_mutex;

PlanPair get_plans(int n) {
  static std::map<int, PlanPair> cache;
  std::lock_guard<std::mutex> lock(g_plan_mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<Complex> probe(n);
  auto* p = reinterpret_cast<fftw_complex*>(probe.data());
  PlanPair pp;
  pp.forward = fftw_plan_dft_1d(n, p, p, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  pp.backward = fftw_plan_dft_1d(n, p, p, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  cache[n] = pp;
  return pp;
}

// multiplier(m) maps the integer mode index (already wrapped to negative
// frequencies) to the Fourier multiplier.
template <typename T>
void spectral_apply(const T* in, T* out, const Grid& g, int axis,
                    const std::vector<Complex>& mult) {
  const int n = g.points_per_axis;
  const std::ptrdiff_t s = static_cast<std::ptrdiff_t>(g.stride(axis));
  const std::ptrdiff_t block = static_cast<std::ptrdiff_t>(n) * s;
  const std::ptrdiff_t repeat = static_cast<std::ptrdiff_t>(g.total_points()) / block;
  PlanPair plans = get_plans(n);

  std::vector<Complex> line(n);
  auto* lp = reinterpret_cast<fftw_complex*>(line.data());
  const double inv_n = 1.0 / n;
  for (std::ptrdiff_t b = 0; b < repeat; ++b) {
    for (std::ptrdiff_t off = 0; off < s; ++off) {
      const T* src = in + b * block + off;
      T* dst = out + b * block + off;
      for (int i = 0; i < n; ++i) line[i] = Complex(src[i * s]);
      fftw_execute_dft(plans.forward, lp, lp);
      for (int i = 0; i < n; ++i) line[i] *= mult[i] * inv_n;
      fftw_execute_dft(plans.backward, lp, lp);
      if constexpr (std::is_same_v<T, double>) {
        for (int i = 0; i < n; ++i) dst[i * s] = line[i].real();
      } else {
        for (int i = 0; i < n; ++i) dst[i * s] = line[i];
      }
    }
  }
}

std::vector<Complex> spectral_multiplier(const Grid& g, bool second) {
  const int n = g.points_per_axis;
  const double dk = std::numbers::pi / g.half_extent;  // 2*pi / (2L)
  std::vector<Complex> mult(n);
  for (int i = 0; i < n; ++i) {
    int m = (i <= n / 2) ? i : i - n;
    if (second) {
      if (i == n / 2) m = n / 2;  // Nyquist contributes -k^2 symmetrically
      const double k = dk * m;
      mult[i] = Complex(-k * k, 0.0);
    } else {
      // Zero the Nyquist mode so the derivative of a real field stays real.
      if (i == n / 2) {
        mult[i] = Complex(0.0, 0.0);
      } else {
        mult[i] = Complex(0.0, dk * m);
      }
    }
  }
  return mult;
}

}  // namespace

DerivativeEngine::DerivativeEngine(DiffBackend backend, int fd_order)
    : backend_(backend), fd_order_(fd_order) {
  first_stencil(fd_order);  // validates the order
}

int DerivativeEngine::stencil_radius() const {
  return backend_ == DiffBackend::FiniteDifference ? first_stencil(fd_order_).radius : 0;
}

namespace {
template <typename FieldT>
void check_axis(const FieldT& f, int axis) {
  if (axis < 0 || axis >= f.grid.axes())
    throw std::out_of_range("diff: axis out of range");
}
}  // namespace

void DerivativeEngine::diff_into(const RealField& f, int axis, RealField& out) const {
  check_axis(f, axis);
  out.grid = f.grid;
  out.samples.resize(f.size());
  if (backend_ == DiffBackend::FiniteDifference) {
    apply_stencil<double, true>(f.samples.data(), out.samples.data(), f.grid, axis,
                                first_stencil(fd_order_), 1.0 / f.grid.spacing);
  } else {
    spectral_apply(f.samples.data(), out.samples.data(), f.grid, axis,
                   spectral_multiplier(f.grid, false));
  }
}

void DerivativeEngine::diff_into(const ComplexField& f, int axis, ComplexField& out) const {
  check_axis(f, axis);
  out.grid = f.grid;
  out.samples.resize(f.size());
  if (backend_ == DiffBackend::FiniteDifference) {
    apply_stencil<Complex, true>(f.samples.data(), out.samples.data(), f.grid, axis,
                                 first_stencil(fd_order_), 1.0 / f.grid.spacing);
  } else {
    spectral_apply(f.samples.data(), out.samples.data(), f.grid, axis,
                   spectral_multiplier(f.grid, false));
  }
}

RealField DerivativeEngine::diff(const RealField& f, int axis) const {
  RealField out;
  diff_into(f, axis, out);
  return out;
}

ComplexField DerivativeEngine::diff(const ComplexField& f, int axis) const {
  ComplexField out;
  diff_into(f, axis, out);
  return out;
}

namespace {
template <typename T>
void second_diff_impl(const T* in, T* out, const Grid& g, int axis, DiffBackend backend,
                      int order) {
  if (backend == DiffBackend::FiniteDifference) {
    apply_stencil<T, false>(in, out, g, axis, second_stencil(order),
                            1.0 / (g.spacing * g.spacing));
  } else {
    spectral_apply(in, out, g, axis, spectral_multiplier(g, true));
  }
}
}  // namespace

RealField DerivativeEngine::second_diff(const RealField& f, int axis) const {
  check_axis(f, axis);
  RealField out(f.grid);
  second_diff_impl(f.samples.data(), out.samples.data(), f.grid, axis, backend_, fd_order_);
  return out;
}

ComplexField DerivativeEngine::second_diff(const ComplexField& f, int axis) const {
  check_axis(f, axis);
  ComplexField out(f.grid);
  second_diff_impl(f.samples.data(), out.samples.data(), f.grid, axis, backend_, fd_order_);
  return out;
}

namespace {
template <typename FieldT, typename T>
void laplacian_impl(const FieldT& f, FieldT& out, DiffBackend backend, int order,
                    std::vector<T>& scratch) {
  out.grid = f.grid;
  out.samples.assign(f.size(), T{});
  scratch.resize(f.size());
  for (int a = 0; a < f.grid.axes(); ++a) {
    second_diff_impl(f.samples.data(), scratch.data(), f.grid, a, backend, order);
    T* o = out.samples.data();
    const T* s = scratch.data();
    const std::ptrdiff_t total = static_cast<std::ptrdiff_t>(f.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < total; ++i) o[i] += s[i];
  }
}
}  // namespace

void DerivativeEngine::laplacian_into(const ComplexField& f, ComplexField& out) const {
  std::vector<Complex> scratch;
  laplacian_impl(f, out, backend_, fd_order_, scratch);
}

void DerivativeEngine::laplacian_into(const RealField& f, RealField& out) const {
  std::vector<double> scratch;
  laplacian_impl(f, out, backend_, fd_order_, scratch);
}

RealField DerivativeEngine::laplacian(const RealField& f) const {
  RealField out;
  laplacian_into(f, out);
  return out;
}

ComplexField DerivativeEngine::laplacian(const ComplexField& f) const {
  ComplexField out;
  laplacian_into(f, out);
  return out;
}

namespace {

void fft_axis(ComplexField& f, int axis, bool forward) {
  const Grid& g = f.grid;
  const int n = g.points_per_axis;
  const std::ptrdiff_t s = static_cast<std::ptrdiff_t>(g.stride(axis));
  const std::ptrdiff_t block = static_cast<std::ptrdiff_t>(n) * s;
  const std::ptrdiff_t repeat = static_cast<std::ptrdiff_t>(g.total_points()) / block;
  PlanPair plans = get_plans(n);
  std::vector<Complex> line(n);
  auto* lp = reinterpret_cast<fftw_complex*>(line.data());
  const double inv_n = 1.0 / n;
  for (std::ptrdiff_t b = 0; b < repeat; ++b) {
    for (std::ptrdiff_t off = 0; off < s; ++off) {
      Complex* base = f.samples.data() + b * block + off;
      for (int i = 0; i < n; ++i) line[i] = base[i * s];
      fftw_execute_dft(forward ? plans.forward : plans.backward, lp, lp);
      if (forward) {
        for (int i = 0; i < n; ++i) base[i * s] = line[i];
      } else {
        for (int i = 0; i < n; ++i) base[i * s] = line[i] * inv_n;
      }
    }
  }
}

}  // namespace

void fft_forward(ComplexField& f) {
  for (int a = 0; a < f.grid.axes(); ++a) fft_axis(f, a, true);
}

void fft_backward(ComplexField& f) {
  for (int a = 0; a < f.grid.axes(); ++a) fft_axis(f, a, false);
}

std::vector<double> k_squared_table(const Grid& g) {
  const int n = g.points_per_axis;
  const int axes = g.axes();
  const double dk = std::numbers::pi / g.half_extent;
  std::vector<double> k2_axis(n);
  for (int i = 0; i < n; ++i) {
    const int m = (i <= n / 2) ? i : i - n;
    k2_axis[i] = dk * m * (dk * m);
  }
  std::vector<double> table(g.total_points(), 0.0);
  std::vector<int> idx(axes, 0);
  for (std::size_t flat = 0; flat < table.size(); ++flat) {
    double k2 = 0.0;
    for (int a = 0; a < axes; ++a) k2 += k2_axis[idx[a]];
    table[flat] = k2;
    for (int a = axes - 1; a >= 0; --a) {
      if (++idx[a] < n) break;
      idx[a] = 0;
    }
  }
  return table;
}

double DerivativeEngine::laplacian_symbol_bound(const Grid& g) const {
  const double h2 = g.spacing * g.spacing;
  double per_axis;
  if (backend_ == DiffBackend::FiniteDifference) {
    const Stencil& st = second_stencil(fd_order_);
    double sum = std::abs(st.center);
    for (int k = 1; k <= st.radius; ++k) sum += 2.0 * std::abs(st.w[k - 1]);
    per_axis = sum / h2;
  } else {
    per_axis = std::numbers::pi * std::numbers::pi / h2;
  }
  return per_axis * g.axes();
}

}  // namespace dgnls
