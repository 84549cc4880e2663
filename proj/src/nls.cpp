#include "nlswe/nls.hpp"

#include <cmath>
#include <numbers>

#include "nlswe/errors.hpp"

namespace nlswe {

namespace {

// |psi_j| is constant along the potential flow, so the rotation uses the
// pre-update modulus; the absorbing factor only scales the amplitude.
void apply_potential(ComplexVector& psi, std::span<const double> b, const RealVector* sigma,
                     double g, double eps, double tau) {
  const double g_over_eps = g / eps;
  for (std::size_t j = 0; j < psi.size(); ++j) {
    Complex& z = psi[j];
    Complex factor = std::polar(1.0, -g_over_eps * (std::norm(z) + b[j]) * tau);
    if (sigma && (*sigma)[j] > 0.0) factor *= std::exp(-(*sigma)[j] * tau / eps);
    z *= factor;
  }
}

}  // namespace

SpongeSize sponge_params(double eps, double omega, int wavelengths, double reduction) {
  if (omega == 0.0 || !std::isfinite(omega)) {
    throw UndefinedWavenumberError("sponge_params: dominant wavenumber must be nonzero");
  }
  if (!(eps > 0.0)) throw ValidationError("sponge_params: eps must be positive");
  if (wavelengths < 1) throw ValidationError("sponge_params: need at least one wavelength");
  if (!(reduction > 0.0 && reduction < 1.0)) {
    throw ValidationError("sponge_params: reduction must lie in (0, 1)");
  }
  SpongeSize s;
  s.ell = wavelengths * 2.0 * std::numbers::pi * eps / std::abs(omega);
  s.sigma_max = -(2.0 * eps * std::abs(omega) / s.ell) * std::log(reduction);
  return s;
}

SpongeProfile build_sponge(const Mesh1D& mesh, double L, double ell, double sigma_max) {
  if (!(ell > 0.0) || !(L > 0.0)) throw GeometryError("build_sponge: L and ell must be positive");
  const double edge = L + ell;
  const double tol = 1e-9 * edge;
  if (std::abs(mesh.a() + edge) > tol || std::abs(mesh.b() - edge) > tol) {
    throw GeometryError("build_sponge: mesh does not span [-(L+ell), L+ell]");
  }
  SpongeProfile sp;
  sp.L = L;
  sp.ell = ell;
  sp.sigma_max = sigma_max;
  const auto& x = mesh.coordinates();
  sp.sigma.resize(x.size(), 0.0);
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double s = std::min((std::abs(x[j]) - L) / ell, 1.0);
    if (s <= 0.0) continue;
    sp.sigma[j] = sigma_max * s * s * s * (10.0 + s * (-15.0 + 6.0 * s));
  }
  return sp;
}

void validate(const SolverConfig& cfg) {
  if (!(cfg.g > 0.0)) throw ValidationError("SolverConfig: g must be positive");
  if (!(cfg.eps > 0.0)) throw ValidationError("SolverConfig: eps must be positive");
  if (!(cfg.dt > 0.0)) throw ValidationError("SolverConfig: dt must be positive");
  if (!(cfg.tolerance > 0.0 && cfg.tolerance <= 1e-6)) {
    throw ValidationError("SolverConfig: tolerance must lie in (0, 1e-6]");
  }
}

Propagator::Propagator(std::shared_ptr<const Mesh1D> mesh, RealVector bathymetry,
                       std::optional<SpongeProfile> sponge, SolverConfig cfg)
    : mesh_(std::move(mesh)), b_(std::move(bathymetry)), sponge_(std::move(sponge)), cfg_(cfg) {
  validate(cfg_);
  if (b_.empty()) b_.assign(mesh_->size(), 0.0);
  if (b_.size() != mesh_->size()) throw DimensionError("Propagator: bathymetry size mismatch");
  if (sponge_ && sponge_->sigma.size() != mesh_->size()) {
    throw DimensionError("Propagator: sponge size mismatch");
  }
}

const BandedLU& Propagator::factorization(double dt) {
  auto it = factors_.find(dt);
  if (it == factors_.end()) {
    const Complex coeff(0.0, cfg_.eps * dt / 4.0);
    it = factors_.emplace(dt, BandedLU(mesh_->mass(), mesh_->stiffness(), coeff)).first;
  }
  return it->second;
}

void Propagator::potential(WaveField& field, double tau) const {
  apply_potential(field.psi, b_, sponge_ ? &sponge_->sigma : nullptr, cfg_.g, cfg_.eps, tau);
}

void Propagator::dispersive(WaveField& field, double dt) {
  const auto& M = mesh_->mass();
  const double beta = cfg_.eps * dt / 4.0;
  // rhs = (M - i beta K) psi
  ComplexVector rhs = mesh_->stiffness().multiply(field.psi);
  for (std::size_t j = 0; j < rhs.size(); ++j) {
    rhs[j] = M[j] * field.psi[j] - Complex(0.0, beta) * rhs[j];
  }
  if (cfg_.solver == DispersiveSolverKind::DirectBanded) {
    field.psi = factorization(dt).solve(rhs);
    last_iterations_ = 0;
  } else {
    auto result = cocg_solve(M, mesh_->stiffness(), Complex(0.0, beta), rhs, field.psi,
                             cfg_.tolerance, cfg_.max_iterations);
    field.psi = std::move(result.x);
    last_iterations_ = result.iterations;
  }
}

void Propagator::step(WaveField& field, std::optional<double> dt) {
  const double h = dt.value_or(cfg_.dt);
  potential(field, 0.5 * h);
  dispersive(field, h);
  potential(field, 0.5 * h);
  field.time += h;
}

WaveField potential_half_step(const WaveField& psi, std::span<const double> b,
                              const SpongeProfile* sponge, const SolverConfig& cfg, double tau) {
  if (!(tau > 0.0)) throw ValidationError("potential_half_step: tau must be positive");
  if (b.size() != psi.psi.size()) throw DimensionError("potential_half_step: bathymetry size mismatch");
  if (sponge && sponge->sigma.size() != psi.psi.size()) {
    throw DimensionError("potential_half_step: sponge size mismatch");
  }
  WaveField out = psi;
  apply_potential(out.psi, b, sponge ? &sponge->sigma : nullptr, cfg.g, cfg.eps, tau);
  return out;
}

WaveField dispersive_step(const WaveField& psi, const Mesh1D& mesh, const SolverConfig& cfg) {
  validate(cfg);
  if (psi.psi.size() != mesh.size()) throw DimensionError("dispersive_step: size mismatch");
  auto shared = std::shared_ptr<const Mesh1D>(std::shared_ptr<const Mesh1D>{}, &mesh);
  Propagator prop(shared, RealVector(mesh.size(), 0.0), std::nullopt, cfg);
  WaveField out = psi;
  prop.dispersive(out, cfg.dt);
  return out;
}

WaveField strang_step(const WaveField& psi, std::span<const double> b, const SpongeProfile* sponge,
                      const SolverConfig& cfg) {
  validate(cfg);
  std::optional<SpongeProfile> sp;
  if (sponge) sp = *sponge;
  Propagator prop(psi.mesh, RealVector(b.begin(), b.end()), std::move(sp), cfg);
  WaveField out = psi;
  prop.step(out);
  return out;
}

}  // namespace nlswe
