#pragma once

#include <map>
#include <memory>
#include <optional>
#include <span>

#include "nlswe/banded.hpp"
#include "nlswe/madelung.hpp"
#include "nlswe/mesh.hpp"

namespace nlswe {

/// Nodal damping coefficients of the complex absorbing potential together
/// with the parameters that produced them.
struct SpongeProfile {
  RealVector sigma;
  double L = 0.0;  // interior half-width; sigma vanishes for |x| <= L
  double ell = 0.0;
  double sigma_max = 0.0;
  double omega = 0.0;
  int wavelengths = 16;
  double reduction = 1e-6;
};

struct SpongeSize {
  double ell = 0.0;
  double sigma_max = 0.0;
};

/// Layer width N * 2 pi eps / |omega| and the peak damping that reduces an
/// outgoing carrier of wavenumber omega by `reduction` across the layer.
SpongeSize sponge_params(double eps, double omega, int wavelengths, double reduction);

/// Quintic smoothstep sigma_max (6 s^5 - 15 s^4 + 10 s^3), s = (|x| - L) / ell,
/// on a mesh spanning [-(L + ell), L + ell].
SpongeProfile build_sponge(const Mesh1D& mesh, double L, double ell, double sigma_max);

enum class DispersiveSolverKind { DirectBanded, Iterative };

struct SolverConfig {
  double g = 1.0;
  double eps = 0.01;
  double dt = 0.0;
  double tolerance = 1e-12;  // iterative path only
  DispersiveSolverKind solver = DispersiveSolverKind::DirectBanded;
  int max_iterations = 10000;
};

void validate(const SolverConfig& cfg);

/// Exact nodal solution of i eps psi_t = g (|psi|^2 + b) psi - i sigma psi
/// over a time interval tau (pass dt/2 from a Strang step).
WaveField potential_half_step(const WaveField& psi, std::span<const double> b,
                              const SpongeProfile* sponge, const SolverConfig& cfg, double tau);

/// Crank-Nicolson step of i eps psi_t = -(eps^2/2) psi_xx over cfg.dt:
/// (M + i beta K) psi^{n+1} = (M - i beta K) psi^n with beta = eps dt / 4.
WaveField dispersive_step(const WaveField& psi, const Mesh1D& mesh, const SolverConfig& cfg);

/// One Strang step: potential(dt/2), dispersive(dt), potential(dt/2).
WaveField strang_step(const WaveField& psi, std::span<const double> b, const SpongeProfile* sponge,
                      const SolverConfig& cfg);

/// Strang propagator bound to one mesh, bathymetry and sponge. The
/// Crank-Nicolson factorization is built once per distinct step size and
/// reused.
class Propagator {
 public:
  Propagator(std::shared_ptr<const Mesh1D> mesh, RealVector bathymetry,
             std::optional<SpongeProfile> sponge, SolverConfig cfg);

  const SolverConfig& config() const { return cfg_; }
  const RealVector& bathymetry() const { return b_; }
  const SpongeProfile* sponge() const { return sponge_ ? &*sponge_ : nullptr; }

  /// Advances `field` in place by dt (defaults to the configured step).
  void step(WaveField& field, std::optional<double> dt = std::nullopt);

  /// Dispersive substep alone over dt, in place.
  void dispersive(WaveField& field, double dt);

  /// Potential substep alone over tau, in place.
  void potential(WaveField& field, double tau) const;

  // Iterations spent by the most recent iterative solve (0 on the direct path).
  int last_iterations() const { return last_iterations_; }

 private:
  const BandedLU& factorization(double dt);

  std::shared_ptr<const Mesh1D> mesh_;
  RealVector b_;
  std::optional<SpongeProfile> sponge_;
  SolverConfig cfg_;
  std::map<double, BandedLU> factors_;
  int last_iterations_ = 0;
};

}  // namespace nlswe
