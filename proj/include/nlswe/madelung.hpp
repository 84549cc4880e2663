#pragma once

#include <functional>
#include <memory>

#include "nlswe/mesh.hpp"

namespace nlswe {

/// Complex wave function psi at the mesh unknowns, with semiclassical
/// parameter eps and the current simulation time.
struct WaveField {
  std::shared_ptr<const Mesh1D> mesh;
  ComplexVector psi;
  double eps = 0.0;
  double time = 0.0;
};

/// Water height and discharge recovered from a wave field.
struct HydroState {
  std::shared_ptr<const Mesh1D> mesh;
  RealVector h;
  RealVector q;
  double time = 0.0;
};

using ScalarFunction = std::function<double(double)>;

enum class InitRecipe { RiemannTanh, SoftplusSurface };

struct InitParams {
  InitRecipe recipe = InitRecipe::RiemannTanh;
  double hL = 0.0;
  double hR = 0.0;
  double uL = 0.0;
  double uR = 0.0;
  double delta = 0.0;  // smoothing width, > 0
  ScalarFunction surface;
  ScalarFunction bathymetry;
};

// Smoothed two-state profiles; exposed for tests and reference sampling.
double riemann_height(const InitParams& p, double x);
double riemann_phase(const InitParams& p, double x);
double riemann_phase_derivative(const InitParams& p, double x);

/// delta * log(1 + exp(z / delta)), evaluated without overflow.
double softplus(double z, double delta);

/// psi = sqrt(h0) exp(i phi0 / eps) with tanh-smoothed height and the
/// closed-form phase whose derivative is the tanh-smoothed velocity.
WaveField init_riemann(std::shared_ptr<const Mesh1D> mesh, const InitParams& p, double eps);

/// Real psi = sqrt(softplus(eta0 - b)) at every node.
WaveField init_softplus_surface(std::shared_ptr<const Mesh1D> mesh, const ScalarFunction& eta0,
                                const ScalarFunction& b, double delta, double eps);

/// h = |psi|^2 and q = eps Im(conj(psi) psi_x), with psi_x the element-wise
/// derivative averaged across shared element boundaries.
HydroState recover(const WaveField& field);

/// u = q / h where h > eps^2, zero elsewhere.
RealVector velocity(const HydroState& state, double eps);

}  // namespace nlswe
