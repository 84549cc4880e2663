#include "nlswe/madelung.hpp"

#include <cmath>

#include "nlswe/errors.hpp"

namespace nlswe {

namespace {

void check_finite(const WaveField& f, const char* where) {
  for (const auto& z : f.psi) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw InvalidStateError(std::string(where) + ": non-finite wave function value");
    }
  }
}

}  // namespace

double riemann_height(const InitParams& p, double x) {
  return 0.5 * (p.hL + p.hR) + 0.5 * (p.hR - p.hL) * std::tanh(x / p.delta);
}

double riemann_phase(const InitParams& p, double x) {
  const double ax = std::abs(x);
  return 0.5 * (p.uR + p.uL) * x +
         0.5 * (p.uR - p.uL) * p.delta * (ax / p.delta + std::log1p(std::exp(-2.0 * ax / p.delta)));
}

double riemann_phase_derivative(const InitParams& p, double x) {
  return 0.5 * (p.uR + p.uL) + 0.5 * (p.uR - p.uL) * std::tanh(x / p.delta);
}

double softplus(double z, double delta) {
  const double s = z / delta;
  return delta * (std::max(s, 0.0) + std::log1p(std::exp(-std::abs(s))));
}

WaveField init_riemann(std::shared_ptr<const Mesh1D> mesh, const InitParams& p, double eps) {
  if (!(eps > 0.0)) throw InvalidStateError("init_riemann: eps must be positive");
  if (!(p.delta > 0.0)) throw InvalidStateError("init_riemann: delta must be positive");
  if (p.hL < 0.0 || p.hR < 0.0) throw InvalidStateError("init_riemann: negative Riemann height");

  WaveField f;
  f.eps = eps;
  f.psi.resize(mesh->size());
  const auto& x = mesh->coordinates();
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double amp = std::sqrt(std::max(riemann_height(p, x[j]), 0.0));
    f.psi[j] = std::polar(amp, riemann_phase(p, x[j]) / eps);
  }
  f.mesh = std::move(mesh);
  check_finite(f, "init_riemann");
  return f;
}

WaveField init_softplus_surface(std::shared_ptr<const Mesh1D> mesh, const ScalarFunction& eta0,
                                const ScalarFunction& b, double delta, double eps) {
  if (!(eps > 0.0)) throw InvalidStateError("init_softplus_surface: eps must be positive");
  if (!(delta > 0.0)) throw InvalidStateError("init_softplus_surface: delta must be positive");
  WaveField f;
  f.eps = eps;
  f.psi.resize(mesh->size());
  const auto& x = mesh->coordinates();
  for (std::size_t j = 0; j < x.size(); ++j) {
    f.psi[j] = std::sqrt(softplus(eta0(x[j]) - b(x[j]), delta));
  }
  f.mesh = std::move(mesh);
  check_finite(f, "init_softplus_surface");
  return f;
}

HydroState recover(const WaveField& field) {
  HydroState s;
  s.mesh = field.mesh;
  s.time = field.time;
  const std::size_t n = field.psi.size();
  s.h.resize(n);
  s.q.resize(n);
  const ComplexVector dpsi = nodal_derivative(*field.mesh, field.psi);
  for (std::size_t j = 0; j < n; ++j) {
    s.h[j] = std::norm(field.psi[j]);
    s.q[j] = field.eps * std::imag(std::conj(field.psi[j]) * dpsi[j]);
  }
  return s;
}

RealVector velocity(const HydroState& state, double eps) {
  RealVector u(state.h.size(), 0.0);
  const double floor = eps * eps;
  for (std::size_t j = 0; j < u.size(); ++j) {
    if (state.h[j] > floor) u[j] = state.q[j] / state.h[j];
  }
  return u;
}

}  // namespace nlswe
