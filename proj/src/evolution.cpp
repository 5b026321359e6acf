#include "dgnls/evolution.hpp"

#include <cmath>
#include <sstream>

namespace dgnls {

PotentialSpec PotentialSpec::polynomial_x2(std::vector<double> coeffs, Window window) {
  PotentialSpec p;
  p.kind = Kind::PolynomialInX2;
  p.parameters = std::move(coeffs);
  p.window = window;
  return p;
}

PotentialSpec PotentialSpec::harmonic(double strength, Window window) {
  PotentialSpec p;
  p.kind = Kind::Harmonic;
  p.parameters = {strength};
  p.window = window;
  return p;
}

namespace {

double smooth_cutoff(double r, double r0, double w) {
  if (r <= r0) return 1.0;
  if (r >= r0 + w) return 0.0;
  const double s = (r - r0) / w;
  const double s3 = s * s * s;
  return 1.0 - s3 * (10.0 - 15.0 * s + 6.0 * s * s);
}

RealField load_particle2_table(const Grid& g, const std::string& path);

}  // namespace

RealField PotentialSpec::realize(const Grid& g) const {
  const int d = g.dims_per_particle;
  RealField v;
  switch (kind) {
    case Kind::Zero:
      return RealField(g, 0.0);
    case Kind::PolynomialInX2: {
      const std::vector<double>& p = parameters;
      v = make_real_field(g, [&](std::span<const double> x) {
        const double u = x[d];  // first particle-2 axis
        double acc = 0.0;
        for (std::size_t k = p.size(); k-- > 0;) acc = acc * u + p[k];
        return acc;
      });
      break;
    }
    case Kind::Harmonic: {
      if (parameters.size() != 1)
        throw std::invalid_argument("harmonic potential takes exactly one strength parameter");
      const double k = parameters[0];
      v = make_real_field(g, [&](std::span<const double> x) {
        double r2 = 0.0;
        for (int a = d; a < g.axes(); ++a) r2 += x[a] * x[a];
        return k * r2;
      });
      break;
    }
    case Kind::Tabulated:
      v = load_particle2_table(g, table_path);
      break;
  }

  if (window.kind == Window::Kind::SmoothCutoff) {
    if (!(window.width > 0.0))
      throw std::invalid_argument("smooth_cutoff window needs positive width");
    const double r0 = window.radius, w = window.width;
    std::size_t i = 0;
    for_each_point(g, [&](std::size_t, std::span<const double> x) {
      double r2 = 0.0;
      for (int a = d; a < g.axes(); ++a) r2 += x[a] * x[a];
      v.samples[i] *= smooth_cutoff(std::sqrt(r2), r0, w);
      ++i;
    });
  }
  return v;
}

std::string PotentialSpec::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::Zero: os << "zero"; break;
    case Kind::PolynomialInX2: {
      os << "polynomial_in_x2(";
      for (std::size_t i = 0; i < parameters.size(); ++i)
        os << (i ? "," : "") << parameters[i];
      os << ")";
      break;
    }
    case Kind::Harmonic:
      os << "harmonic(" << (parameters.empty() ? 0.0 : parameters[0]) << ")";
      break;
    case Kind::Tabulated: os << "tabulated(" << table_path << ")"; break;
  }
  if (window.kind == Window::Kind::SmoothCutoff)
    os << " window=smooth_cutoff(" << window.radius << "," << window.width << ")";
  return os.str();
}

namespace {

RealField load_particle2_table(const Grid& g, const std::string& path) {
  RealField v = load_tabulated_field_for_potential(g, path);
  return v;
}

}  // namespace

TimeSeries Trajectory::series(const std::string& name) const {
  auto it = scalars.find(name);
  if (it == scalars.end())
    throw std::invalid_argument("Trajectory: no scalar series named " + name);
  return TimeSeries{times, it->second};
}

// ---------------------------------------------------------------------------
// Propagator

namespace {

class Propagator {
 public:
  Propagator(const Grid& g, const RealField& V, const DGCoefficients& coeffs,
             const DerivativeEngine& engine, IntegratorConfig::Scheme scheme, double dt)
      : grid_(g), v_(V), coeffs_(coeffs), engine_(engine), scheme_(scheme), dt_(dt) {
    if (scheme_ == IntegratorConfig::Scheme::StrangSplit) prepare_strang();
  }

  void rhs_into(const ComplexField& psi, ComplexField& out) {
    engine_.laplacian_into(psi, lap_);
    r_total_into(psi, coeffs_, engine_, r_, hw_);
    last_r_max_ = max_abs(r_);
    out.grid = psi.grid;
    out.samples.resize(psi.size());
    const Complex* p = psi.samples.data();
    const Complex* lap = lap_.samples.data();
    const double* r = r_.samples.data();
    const double* v = v_.samples.data();
    Complex* o = out.samples.data();
    const std::ptrdiff_t total = static_cast<std::ptrdiff_t>(psi.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < total; ++i) {
      const Complex h = -0.5 * lap[i] + (v[i] + r[i]) * p[i];
      o[i] = Complex(h.imag(), -h.real());  // -i * h
    }
  }

  void step(ComplexField& psi) {
    if (scheme_ == IntegratorConfig::Scheme::Rk4Full)
      step_rk4(psi);
    else
      step_strang(psi);
  }

  // max |R[psi]| seen in the most recent rhs evaluation.
  double last_nonlinear_magnitude() const { return last_r_max_; }

  double stability_rate(const ComplexField& psi) {
    r_total_into(psi, coeffs_, engine_, r_, hw_);
    return 0.5 * engine_.laplacian_symbol_bound(grid_) + max_abs(v_) + max_abs(r_);
  }

 private:
  void step_rk4(ComplexField& psi) {
    const double dt = dt_;
    rhs_into(psi, k1_);
    axpy(psi, 0.5 * dt, k1_, stage_);
    rhs_into(stage_, k2_);
    axpy(psi, 0.5 * dt, k2_, stage_);
    rhs_into(stage_, k3_);
    axpy(psi, dt, k3_, stage_);
    rhs_into(stage_, k4_);
    Complex* p = psi.samples.data();
    const Complex* a = k1_.samples.data();
    const Complex* b = k2_.samples.data();
    const Complex* c = k3_.samples.data();
    const Complex* d = k4_.samples.data();
    const double w = dt / 6.0;
    const std::ptrdiff_t total = static_cast<std::ptrdiff_t>(psi.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < total; ++i)
      p[i] += w * (a[i] + 2.0 * b[i] + 2.0 * c[i] + d[i]);
  }

  void prepare_strang() {
    // Half linear step = V/4 phase, spectral kinetic half step, V/4 phase.
    const std::size_t total = grid_.total_points();
    v_quarter_phase_.resize(total);
    for (std::size_t i = 0; i < total; ++i) {
      const double th = -v_.samples[i] * dt_ * 0.25;
      v_quarter_phase_[i] = Complex(std::cos(th), std::sin(th));
    }
    const std::vector<double> k2 = k_squared_table(grid_);
    kinetic_phase_.resize(total);
    for (std::size_t i = 0; i < total; ++i) {
      const double th = -0.5 * k2[i] * 0.5 * dt_;  // exp(-i k^2/2 * dt/2)
      kinetic_phase_[i] = Complex(std::cos(th), std::sin(th));
    }
  }

  void half_linear(ComplexField& psi) {
    pointwise_multiply(psi, v_quarter_phase_);
    fft_forward(psi);
    pointwise_multiply(psi, kinetic_phase_);
    fft_backward(psi);
    pointwise_multiply(psi, v_quarter_phase_);
  }

  void step_strang(ComplexField& psi) {
    half_linear(psi);
    r_total_into(psi, coeffs_, engine_, r_, hw_);
    last_r_max_ = max_abs(r_);
    Complex* p = psi.samples.data();
    const double* r = r_.samples.data();
    const double dt = dt_;
    const std::ptrdiff_t total = static_cast<std::ptrdiff_t>(psi.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < total; ++i) {
      const double th = -r[i] * dt;
      p[i] *= Complex(std::cos(th), std::sin(th));
    }
    half_linear(psi);
  }

  static void axpy(const ComplexField& x, double a, const ComplexField& y, ComplexField& out) {
    out.grid = x.grid;
    out.samples.resize(x.size());
    const Complex* xp = x.samples.data();
    const Complex* yp = y.samples.data();
    Complex* o = out.samples.data();
    const std::ptrdiff_t total = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < total; ++i) o[i] = xp[i] + a * yp[i];
  }

  static void pointwise_multiply(ComplexField& f, const std::vector<Complex>& factor) {
    Complex* p = f.samples.data();
    const Complex* q = factor.data();
    const std::ptrdiff_t total = static_cast<std::ptrdiff_t>(f.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < total; ++i) p[i] *= q[i];
  }

  Grid grid_;
  RealField v_;
  DGCoefficients coeffs_;
  DerivativeEngine engine_;
  IntegratorConfig::Scheme scheme_;
  double dt_;
  double last_r_max_ = 0.0;

  ComplexField lap_, k1_, k2_, k3_, k4_, stage_;
  RealField r_;
  HydroWorkspace hw_;
  std::vector<Complex> v_quarter_phase_, kinetic_phase_;
};

constexpr double kRk4ImaginaryAxisLimit = 2.5;  // safety margin below 2*sqrt(2)

}  // namespace

ComplexField rhs(const ComplexField& psi, const RealField& V, const DGCoefficients& coeffs,
                 const DerivativeEngine& engine) {
  if (!(V.grid == psi.grid)) throw std::invalid_argument("rhs: psi and V grids differ");
  Propagator prop(psi.grid, V, coeffs, engine, IntegratorConfig::Scheme::Rk4Full, 0.0);
  ComplexField out;
  prop.rhs_into(psi, out);
  if (!all_finite(out))
    throw SolverAbort("rhs produced non-finite values (density floor breach or unstable state)",
                      0, 0.0);
  return out;
}

ComplexField step(const ComplexField& psi, const RealField& V, const DGCoefficients& coeffs,
                  double dt, const DerivativeEngine& engine, IntegratorConfig::Scheme scheme) {
  if (!(V.grid == psi.grid)) throw std::invalid_argument("step: psi and V grids differ");
  Propagator prop(psi.grid, V, coeffs, engine, scheme, dt);
  ComplexField out = psi;
  prop.step(out);
  if (!all_finite(out)) throw SolverAbort("step produced non-finite values", 0, 0.0);
  return out;
}

Trajectory evolve(const ComplexField& psi0, const PotentialSpec& potential,
                  const DGCoefficients& coeffs, const IntegratorConfig& cfg,
                  const Observers& observers, const DerivativeEngine& engine) {
  const Grid& g = psi0.grid;
  const double mass = integrate(density(psi0));
  if (std::abs(mass - 1.0) > 1e-10)
    throw std::invalid_argument("evolve: psi0 must be normalized (got mass " +
                                std::to_string(mass) + ")");
  if (!(cfg.dt > 0.0)) throw std::invalid_argument("evolve: dt must be positive");
  const double steps_real = cfg.t_final / cfg.dt;
  const long steps = std::lround(steps_real);
  if (std::abs(steps_real - static_cast<double>(steps)) > 1e-6)
    throw std::invalid_argument("evolve: t_final must be an integer multiple of dt");
  if (cfg.record_stride < 1) throw std::invalid_argument("evolve: record_stride must be >= 1");

  RealField v = potential.realize(g);
  Propagator prop(g, v, coeffs, engine, cfg.scheme, cfg.dt);

  if (cfg.scheme == IntegratorConfig::Scheme::Rk4Full && steps > 0) {
    const double rate = prop.stability_rate(psi0);
    if (cfg.dt * rate > kRk4ImaginaryAxisLimit)
      throw SolverAbort("stability bound violated at start: dt * rate = " +
                            std::to_string(cfg.dt * rate) + " > " +
                            std::to_string(kRk4ImaginaryAxisLimit),
                        0, 0.0);
  }

  Trajectory traj;
  for (const auto& ob : observers.scalars) traj.scalars[ob.name] = {};
  for (const auto& ob : observers.fields) traj.fields[ob.name] = {};

  ComplexField psi = psi0;
  auto record = [&](double t) {
    traj.times.push_back(t);
    for (const auto& ob : observers.scalars) traj.scalars[ob.name].push_back(ob.fn(psi));
    for (const auto& ob : observers.fields) traj.fields[ob.name].push_back(ob.fn(psi));
  };

  record(0.0);
  for (long s = 1; s <= steps; ++s) {
    prop.step(psi);
    const double t = static_cast<double>(s) * cfg.dt;
    if (!all_finite(psi))
      throw SolverAbort("non-finite wave function at step " + std::to_string(s) +
                            " (density floor breach or stability failure)",
                        s, t);
    if (cfg.scheme == IntegratorConfig::Scheme::Rk4Full && s % 100 == 0) {
      // The kinetic bound is static; the nonlinearity is state-dependent, so
      // re-check it against the magnitude seen in the last rhs evaluation.
      const double rate = 0.5 * engine.laplacian_symbol_bound(g) + max_abs(v) +
                          prop.last_nonlinear_magnitude();
      if (cfg.dt * rate > kRk4ImaginaryAxisLimit)
        throw SolverAbort("stability bound violated at step " + std::to_string(s), s, t);
    }
    if (s % cfg.record_stride == 0 || s == steps) record(t);
  }
  return traj;
}

}  // namespace dgnls
