#include <doctest.h>

#include <cmath>
#include <numbers>

#include "nlswe/diagnostics.hpp"
#include "nlswe/errors.hpp"
#include "nlswe/nls.hpp"

using namespace nlswe;

namespace {

std::shared_ptr<const Mesh1D> mesh_ptr(double a, double b, std::size_t M, int k, Topology t) {
  return std::make_shared<const Mesh1D>(build_mesh(a, b, M, k, t));
}

HydroState hydro_of(std::shared_ptr<const Mesh1D> mesh, std::function<double(double)> h) {
  HydroState s;
  s.mesh = mesh;
  for (double x : mesh->coordinates()) {
    s.h.push_back(h(x));
    s.q.push_back(0.0);
  }
  return s;
}

}  // namespace

TEST_CASE("energy of a constant state") {
  const auto mesh = mesh_ptr(-1.0, 1.0, 10, 2, Topology::Periodic);
  WaveField f{mesh, ComplexVector(mesh->size(), Complex(0.0, 1.2)), 0.1, 0.0};
  const RealVector b(mesh->size(), 0.0);
  const auto e = energy(f, b, 2.0);
  CHECK(e.mass == doctest::Approx(1.44 * 2.0).epsilon(1e-14));
  CHECK(e.potential == doctest::Approx(0.5 * 2.0 * 1.44 * 1.44 * 2.0).epsilon(1e-14));
  CHECK(std::abs(e.kinetic) <= 1e-14);
  CHECK(std::abs(e.fisher) <= 1e-14);
  CHECK(e.total == doctest::Approx(e.potential).epsilon(1e-14));

  const RealVector lift(mesh->size(), 0.5);
  CHECK(energy(f, lift, 2.0).potential == doctest::Approx(e.potential + 2.0 * 0.5 * e.mass).epsilon(1e-14));
  CHECK_THROWS_AS(energy(f, RealVector(3), 1.0), DimensionError);
}

TEST_CASE("energy of a plane wave is kinetic") {
  const double eps = 0.1;
  const double h0 = 0.8;
  const double kappa = 1.5;
  const auto mesh = mesh_ptr(-std::numbers::pi, std::numbers::pi, 60, 6, Topology::Periodic);
  WaveField f{mesh, ComplexVector(mesh->size()), eps, 0.0};
  // kappa / eps = 15 wavelengths over 2 pi
  for (std::size_t j = 0; j < f.psi.size(); ++j) f.psi[j] = std::polar(std::sqrt(h0), kappa * mesh->coordinates()[j] / eps);
  const auto e = energy(f, RealVector(mesh->size(), 0.0), 1.0);
  const double len = 2.0 * std::numbers::pi;
  CHECK(e.kinetic == doctest::Approx(0.5 * h0 * kappa * kappa * len).epsilon(1e-6));
  CHECK(std::abs(e.fisher) <= 1e-12);
}

TEST_CASE("error_norm examples") {
  const auto mesh = mesh_ptr(-1.0, 1.0, 40, 2, Topology::Neumann);
  const auto s = hydro_of(mesh, [](double x) { return 1.0 + x * x; });
  const RealVector b(mesh->size(), 0.0);
  const auto exact = [](double x, double) { return 1.0 + x * x; };
  for (auto kind : {NormKind::L1, NormKind::L2, NormKind::Linf}) {
    CHECK(error_norm(s, b, Field::Height, exact, {-1.0, 1.0}, kind).value <= 1e-15);
  }

  const auto shifted = [](double x, double) { return 1.0 + x * x + 0.3; };
  const auto r = error_norm(s, b, Field::Height, shifted, {-0.5, 0.5}, NormKind::L1, "shift");
  CHECK(r.measure == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.value == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(r.reference == "shift");
  CHECK(error_norm(s, b, Field::Height, shifted, {-0.5, 0.5}, NormKind::L2).value ==
        doctest::Approx(0.3).epsilon(1e-12));
  CHECK(error_norm(s, b, Field::Height, shifted, {-0.5, 0.5}, NormKind::Linf).value ==
        doctest::Approx(0.3).epsilon(1e-12));

  const RealVector lift(mesh->size(), 0.3);
  CHECK(error_norm(s, lift, Field::Surface, shifted, {-1.0, 1.0}, NormKind::Linf).value <= 1e-15);
}

TEST_CASE("error_norm obeys Hoelder bounds") {
  const auto mesh = mesh_ptr(-2.0, 2.0, 64, 3, Topology::Neumann);
  const auto s = hydro_of(mesh, [](double x) { return std::exp(-x * x) + 0.1 * std::sin(7.0 * x); });
  const RealVector b(mesh->size(), 0.0);
  const auto ref = [](double x, double) { return std::exp(-x * x); };
  const Window w{-1.0, 1.5};
  const auto l1 = error_norm(s, b, Field::Height, ref, w, NormKind::L1);
  const auto l2 = error_norm(s, b, Field::Height, ref, w, NormKind::L2);
  const auto li = error_norm(s, b, Field::Height, ref, w, NormKind::Linf);
  CHECK(l1.value <= std::sqrt(l1.measure) * l2.value * (1.0 + 1e-12));
  CHECK(l2.value <= std::sqrt(l2.measure) * li.value * (1.0 + 1e-12));
  CHECK(l1.value > 0.0);
}

TEST_CASE("error_norm rejects bad windows") {
  const auto mesh = mesh_ptr(-1.0, 1.0, 4, 1, Topology::Neumann);
  const auto s = hydro_of(mesh, [](double) { return 1.0; });
  const RealVector b(mesh->size(), 0.0);
  const auto ref = [](double, double) { return 1.0; };
  CHECK_THROWS_AS(error_norm(s, b, Field::Height, ref, {0.5, 0.5}, NormKind::L1), ValidationError);
  CHECK_THROWS_AS(error_norm(s, b, Field::Height, ref, {0.5, 3.0}, NormKind::L1), ValidationError);
  CHECK_THROWS_AS(error_norm(s, b, Field::Height, ref, {0.01, 0.02}, NormKind::L1), ValidationError);
}

TEST_CASE("convergence_order") {
  CHECK(convergence_order({{0.04, 0.08}, {0.02, 0.04}, {0.01, 0.02}}) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(convergence_order({{0.1, 1e-2}, {0.05, 2.5e-3}}) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(convergence_order({{0.1, 0.3}, {0.05, 0.3}}) == doctest::Approx(0.0));
  CHECK_THROWS_AS(convergence_order({{0.1, 0.3}}), ValidationError);
  CHECK_THROWS_AS(convergence_order({{0.1, 0.3}, {0.1, 0.2}}), ValidationError);
  CHECK_THROWS_AS(convergence_order({{0.1, 0.0}, {0.05, 0.2}}), ValidationError);
  CHECK_THROWS_AS(convergence_order({{-0.1, 0.1}, {0.05, 0.2}}), ValidationError);
}

TEST_CASE("norm and field names") {
  CHECK(parse_norm_kind("L1") == NormKind::L1);
  CHECK(parse_norm_kind(to_string(NormKind::Linf)) == NormKind::Linf);
  CHECK(parse_field("surface") == Field::Surface);
  CHECK(parse_field(to_string(Field::Discharge)) == Field::Discharge);
  CHECK_THROWS_AS(parse_norm_kind("L3"), ValidationError);
  CHECK_THROWS_AS(parse_field("vorticity"), ValidationError);
}

TEST_CASE("splitting energy drift is second order in the time step") {
  const double eps = 0.1;
  const auto mesh = mesh_ptr(-1.0, 1.0, 80, 4, Topology::Periodic);
  const RealVector b(mesh->size(), 0.0);
  WaveField start{mesh, ComplexVector(mesh->size()), eps, 0.0};
  for (std::size_t j = 0; j < start.psi.size(); ++j) {
    const double x = mesh->coordinates()[j];
    start.psi[j] = std::polar(std::sqrt(1.0 + 0.4 * std::cos(std::numbers::pi * x)),
                              0.3 * std::sin(std::numbers::pi * x) / eps);
  }
  const double e0 = energy(start, b, 1.0).total;
  std::vector<double> drift;
  for (double dt : {0.02, 0.01}) {
    SolverConfig cfg;
    cfg.eps = eps;
    cfg.dt = dt;
    Propagator prop(mesh, b, std::nullopt, cfg);
    WaveField f = start;
    double worst = 0.0;
    const int steps = static_cast<int>(std::lround(0.4 / dt));
    for (int n = 0; n < steps; ++n) {
      prop.step(f);
      worst = std::max(worst, std::abs(energy(f, b, 1.0).total - e0));
    }
    drift.push_back(worst);
  }
  CHECK(drift[0] / drift[1] >= 3.0);
  CHECK(drift[0] / drift[1] <= 5.0);
}

TEST_CASE("mass is non-increasing under the absorbing layer") {
  const double eps = 0.05;
  const auto sz = sponge_params(eps, 2.0, 8, 1e-6);
  const double L = 1.0;
  const double half = L + sz.ell;
  const auto mesh = mesh_ptr(-half, half, 400, 1, Topology::Neumann);
  const auto sp = build_sponge(*mesh, L, sz.ell, sz.sigma_max);
  WaveField f{mesh, ComplexVector(mesh->size()), eps, 0.0};
  for (std::size_t j = 0; j < f.psi.size(); ++j) {
    const double x = mesh->coordinates()[j];
    f.psi[j] = std::polar(std::exp(-4.0 * x * x), 2.0 * x / eps);
  }
  SolverConfig cfg;
  cfg.eps = eps;
  cfg.dt = 0.005;
  Propagator prop(mesh, RealVector(mesh->size(), 0.0), sp, cfg);
  const RealVector b(mesh->size(), 0.0);
  double previous = energy(f, b, 1.0).mass;
  const double m0 = previous;
  for (int n = 0; n < 200; ++n) {
    prop.step(f);
    const double m = energy(f, b, 1.0).mass;
    CHECK(m <= previous * (1.0 + 1e-13));
    previous = m;
  }
  CHECK(previous < 0.9 * m0);
}
