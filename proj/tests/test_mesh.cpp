#include <doctest.h>

#include <cmath>
#include <random>

#include "nlswe/errors.hpp"
#include "nlswe/mesh.hpp"

using namespace nlswe;

namespace {

double moment(const GaussLobattoRule& r, int m) {
  double s = 0.0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], m);
  return s;
}

double exact_moment(int m) { return m % 2 ? 0.0 : 2.0 / (m + 1); }

}  // namespace

TEST_CASE("gauss_lobatto low-degree rules") {
  const auto r1 = gauss_lobatto(1);
  CHECK(r1.nodes == RealVector{-1.0, 1.0});
  CHECK(r1.weights == RealVector{1.0, 1.0});

  // moment equations for m = 0..3 give 1/3, 4/3, 1/3
  const auto r2 = gauss_lobatto(2);
  CHECK(r2.nodes[1] == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(r2.weights[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(r2.weights[1] == doctest::Approx(4.0 / 3.0).epsilon(1e-14));

  // roots of P_3' = (15x^2 - 3)/2
  const auto r3 = gauss_lobatto(3);
  CHECK(r3.nodes[1] == doctest::Approx(-1.0 / std::sqrt(5.0)).epsilon(1e-14));
  CHECK(r3.nodes[2] == doctest::Approx(1.0 / std::sqrt(5.0)).epsilon(1e-14));
  CHECK(r3.weights[0] == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
  CHECK(r3.weights[1] == doctest::Approx(5.0 / 6.0).epsilon(1e-14));
}

TEST_CASE("gauss_lobatto invariants for every supported degree") {
  for (int k = 1; k <= kMaxDegree; ++k) {
    CAPTURE(k);
    const auto r = gauss_lobatto(k);
    REQUIRE(r.nodes.size() == static_cast<std::size_t>(k + 1));
    CHECK(r.nodes.front() == -1.0);
    CHECK(r.nodes.back() == 1.0);
    for (int i = 1; i <= k; ++i) CHECK(r.nodes[i] > r.nodes[i - 1]);
    for (double w : r.weights) CHECK(w > 0.0);
    for (int m = 0; m <= 2 * k - 1; ++m) {
      CAPTURE(m);
      CHECK(std::abs(moment(r, m) - exact_moment(m)) <= 1e-12);
    }
  }
}

TEST_CASE("gauss_lobatto rejects unsupported degrees") {
  CHECK_THROWS_AS(gauss_lobatto(0), UnsupportedDegreeError);
  CHECK_THROWS_AS(gauss_lobatto(17), UnsupportedDegreeError);
}

TEST_CASE("build_mesh: linear elements on [-2, 2]") {
  const Mesh1D neu = build_mesh(-2.0, 2.0, 4, 1, Topology::Neumann);
  CHECK(neu.size() == 5);
  CHECK(neu.coordinates() == RealVector{-2.0, -1.0, 0.0, 1.0, 2.0});
  CHECK(neu.mass() == RealVector{0.5, 1.0, 1.0, 1.0, 0.5});

  const Mesh1D per = build_mesh(-2.0, 2.0, 4, 1, Topology::Periodic);
  CHECK(per.size() == 4);
  CHECK(per.mass() == RealVector{1.0, 1.0, 1.0, 1.0});
  CHECK(per.stiffness().entry(0, 3) == doctest::Approx(-1.0));
  CHECK(per.stiffness().entry(3, 0) == doctest::Approx(-1.0));
}

TEST_CASE("build_mesh: single linear element stiffness") {
  const double he = 0.25;
  const Mesh1D m = build_mesh(0.0, he, 1, 1, Topology::Neumann);
  CHECK(m.stiffness().entry(0, 0) == doctest::Approx(1.0 / he));
  CHECK(m.stiffness().entry(0, 1) == doctest::Approx(-1.0 / he));
  CHECK(m.stiffness().entry(1, 0) == doctest::Approx(-1.0 / he));
  CHECK(m.stiffness().entry(1, 1) == doctest::Approx(1.0 / he));
}

TEST_CASE("build_mesh: construction errors") {
  CHECK_THROWS_AS(build_mesh(1.0, 1.0, 4, 1, Topology::Neumann), ConstructionError);
  CHECK_THROWS_AS(build_mesh(0.0, 1.0, 0, 1, Topology::Neumann), ConstructionError);
  CHECK_THROWS_AS(build_mesh(0.0, 1.0, 1, 1, Topology::Periodic), ConstructionError);
  CHECK_THROWS_AS(build_mesh(0.0, 1.0, 4, 0, Topology::Neumann), UnsupportedDegreeError);
}

TEST_CASE("stiffness: symmetric, annihilates constants, positive semidefinite") {
  std::mt19937 rng(7);
  std::normal_distribution<double> normal;
  for (auto topo : {Topology::Neumann, Topology::Periodic}) {
    for (int k : {1, 2, 3, 5}) {
      for (std::size_t M : {2u, 3u, 7u}) {
        CAPTURE(k);
        CAPTURE(M);
        const Mesh1D mesh = build_mesh(-1.0, 2.0, M, k, topo);
        const auto& K = mesh.stiffness();
        const std::size_t n = mesh.size();
        double kmax = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t j = 0; j < n; ++j) {
            CHECK(K.entry(i, j) == K.entry(j, i));
            kmax = std::max(kmax, std::abs(K.entry(i, j)));
          }
        }
        const RealVector ones(n, 1.0);
        for (double v : K.multiply(ones)) CHECK(std::abs(v) <= 1e-12 * kmax);

        for (int trial = 0; trial < 5; ++trial) {
          RealVector x(n);
          for (auto& v : x) v = normal(rng);
          const RealVector Kx = K.multiply(x);
          double q = 0.0;
          for (std::size_t i = 0; i < n; ++i) q += x[i] * Kx[i];
          CHECK(q >= -1e-12 * kmax);
        }
        for (double m : mesh.mass()) CHECK(m > 0.0);
      }
    }
  }
}

TEST_CASE("stiffness matvec agrees with dense entries") {
  const Mesh1D mesh = build_mesh(0.0, 1.0, 2, 1, Topology::Periodic);  // aliased wraparound
  const RealVector x{0.3, -1.7};
  const RealVector y = mesh.stiffness().multiply(x);
  for (std::size_t i = 0; i < 2; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < 2; ++j) s += mesh.stiffness().entry(i, j) * x[j];
    CHECK(y[i] == doctest::Approx(s).epsilon(1e-14));
  }
}

TEST_CASE("discrete_inner_product examples") {
  const Mesh1D mesh = build_mesh(-2.0, 2.0, 4, 1, Topology::Neumann);
  const ComplexVector one(5, 1.0);
  const ComplexVector imag(5, Complex(0.0, 1.0));
  CHECK(discrete_inner_product(mesh, one, one) == Complex(4.0, 0.0));
  CHECK(discrete_inner_product(mesh, one, imag) == Complex(0.0, 4.0));
  ComplexVector x(5);
  for (std::size_t j = 0; j < 5; ++j) x[j] = mesh.coordinates()[j];
  CHECK(discrete_inner_product(mesh, x, x).real() == doctest::Approx(6.0));
  CHECK_THROWS_AS(discrete_inner_product(mesh, one, ComplexVector(4)), DimensionError);
}

TEST_CASE("discrete inner product converges at second order for k = 1") {
  // int_{-2}^{2} sin^2 x dx = 2 - sin(4)/2
  const double exact = 2.0 - std::sin(4.0) / 2.0;
  std::vector<double> err;
  for (std::size_t M : {10u, 20u, 40u}) {
    const Mesh1D mesh = build_mesh(-2.0, 2.0, M, 1, Topology::Neumann);
    RealVector u(mesh.size());
    for (std::size_t j = 0; j < u.size(); ++j) u[j] = std::sin(mesh.coordinates()[j]);
    err.push_back(std::abs(discrete_inner_product(mesh, u, u) - exact));
  }
  CHECK(std::log2(err[0] / err[1]) >= 1.9);
  CHECK(std::log2(err[1] / err[2]) >= 1.9);
}

TEST_CASE("nodal_derivative is exact on element polynomials") {
  const Mesh1D mesh = build_mesh(-1.0, 1.0, 3, 3, Topology::Neumann);
  RealVector u(mesh.size());
  for (std::size_t j = 0; j < u.size(); ++j) u[j] = std::pow(mesh.coordinates()[j], 3);
  const RealVector du = nodal_derivative(mesh, u);
  for (std::size_t j = 0; j < u.size(); ++j) {
    const double x = mesh.coordinates()[j];
    CHECK(du[j] == doctest::Approx(3.0 * x * x).epsilon(1e-12));
  }
}

TEST_CASE("nodal_derivative averages one-sided slopes at element boundaries") {
  // |x| sampled on linear elements: slopes -1 and +1 meet at x = 0
  const Mesh1D mesh = build_mesh(-1.0, 1.0, 2, 1, Topology::Neumann);
  const RealVector u{1.0, 0.0, 1.0};
  const RealVector du = nodal_derivative(mesh, u);
  CHECK(du[0] == doctest::Approx(-1.0));
  CHECK(du[1] == doctest::Approx(0.0));
  CHECK(du[2] == doctest::Approx(1.0));
}
