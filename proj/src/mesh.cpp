#include "nlswe/mesh.hpp"

#include <cmath>
#include <numbers>

#include "nlswe/errors.hpp"

namespace nlswe {

namespace {

// Legendre P_n(x) and P_n'(x) by the three-term recurrence.
void legendre(int n, double x, double& p, double& dp) {
  double p0 = 1.0;
  double p1 = x;
  if (n == 0) {
    p = 1.0;
    dp = 0.0;
    return;
  }
  for (int m = 2; m <= n; ++m) {
    const double p2 = ((2.0 * m - 1.0) * x * p1 - (m - 1.0) * p0) / m;
    p0 = p1;
    p1 = p2;
  }
  p = p1;
  // valid for |x| < 1; endpoints are never requested here
  dp = n * (x * p1 - p0) / (x * x - 1.0);
}

template <typename T>
std::vector<T> derivative_impl(const Mesh1D& mesh, std::span<const T> values) {
  const std::size_t n = mesh.size();
  if (values.size() != n) throw DimensionError("nodal_derivative: size mismatch");
  const int k = mesh.degree();
  const auto& D = mesh.derivative_matrix();
  const double jac = 2.0 / mesh.element_length();
  std::vector<T> sum(n, T{});
  std::vector<int> count(n, 0);
  std::vector<T> local(static_cast<std::size_t>(k) + 1);
  for (std::size_t e = 0; e < mesh.elements(); ++e) {
    for (int j = 0; j <= k; ++j) local[j] = values[mesh.global_index(e, j)];
    for (int i = 0; i <= k; ++i) {
      T d{};
      for (int j = 0; j <= k; ++j) d += D[i * (k + 1) + j] * local[j];
      const std::size_t g = mesh.global_index(e, i);
      sum[g] += jac * d;
      ++count[g];
    }
  }
  for (std::size_t g = 0; g < n; ++g) sum[g] /= static_cast<double>(count[g]);
  return sum;
}

}  // namespace

GaussLobattoRule gauss_lobatto(int k) {
  if (k < 1 || k > kMaxDegree) {
    throw UnsupportedDegreeError("Gauss-Lobatto degree " + std::to_string(k) +
                                 " outside [1, " + std::to_string(kMaxDegree) + "]");
  }
  GaussLobattoRule rule;
  rule.degree = k;
  rule.nodes.assign(k + 1, 0.0);
  rule.weights.assign(k + 1, 0.0);
  rule.nodes.front() = -1.0;
  rule.nodes.back() = 1.0;

  // interior nodes: roots of P_k'; (1 - x^2) P_k'' = 2x P_k' - k(k+1) P_k
  for (int i = 1; i <= k / 2; ++i) {
    double x = std::cos(std::numbers::pi * i / k);
    for (int it = 0; it < 100; ++it) {
      double p = 0.0;
      double dp = 0.0;
      legendre(k, x, p, dp);
      const double ddp = (2.0 * x * dp - k * (k + 1.0) * p) / (1.0 - x * x);
      const double dx = dp / ddp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[k - i] = x;
  }
  if (k % 2 == 0) rule.nodes[k / 2] = 0.0;

  for (int i = 0; i <= k; ++i) {
    const double x = rule.nodes[i];
    double p = 1.0;  // |P_k(+-1)| = 1
    if (std::abs(x) != 1.0) {
      double dp = 0.0;
      legendre(k, x, p, dp);
    }
    rule.weights[i] = 2.0 / (k * (k + 1.0) * p * p);
  }
  return rule;
}

RealVector lagrange_derivative_matrix(const GaussLobattoRule& rule) {
  const int n = rule.degree + 1;
  const auto& x = rule.nodes;
  RealVector bary(n, 1.0);
  for (int j = 0; j < n; ++j) {
    for (int m = 0; m < n; ++m) {
      if (m != j) bary[j] *= (x[j] - x[m]);
    }
    bary[j] = 1.0 / bary[j];
  }
  RealVector D(static_cast<std::size_t>(n * n), 0.0);
  for (int i = 0; i < n; ++i) {
    double diag = 0.0;
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const double v = (bary[j] / bary[i]) / (x[i] - x[j]);
      D[i * n + j] = v;
      diag -= v;
    }
    D[i * n + i] = diag;
  }
  return D;
}

SymmetricBandMatrix::SymmetricBandMatrix(std::size_t n, int bandwidth, bool cyclic)
    : n_(n), bandwidth_(bandwidth), cyclic_(cyclic),
      data_(static_cast<std::size_t>(bandwidth + 1) * n, 0.0) {}

void SymmetricBandMatrix::add(std::size_t i, std::size_t j, double value) {
  if (i == j) {
    band(0, i) += value;
    return;
  }
  // Store the coupling at the row from which the partner lies within the band
  // going forward (cyclically for periodic storage).
  auto forward = [&](std::size_t from, std::size_t to) -> long {
    if (cyclic_) return static_cast<long>((to + n_ - from) % n_);
    return to > from ? static_cast<long>(to - from) : -1;
  };
  const long dij = forward(i, j);
  if (dij >= 1 && dij <= bandwidth_) {
    band(static_cast<int>(dij), i) += value;
    return;
  }
  const long dji = forward(j, i);
  if (dji >= 1 && dji <= bandwidth_) {
    band(static_cast<int>(dji), j) += value;
    return;
  }
  throw DimensionError("SymmetricBandMatrix::add: entry outside band");
}

double SymmetricBandMatrix::entry(std::size_t i, std::size_t j) const {
  if (i == j) return band(0, i);
  double v = 0.0;
  for (int d = 1; d <= bandwidth_; ++d) {
    const auto dd = static_cast<std::size_t>(d);
    if ((cyclic_ || i + dd < n_) && column(d, i) == j) v += band(d, i);
    if ((cyclic_ || j + dd < n_) && column(d, j) == i) v += band(d, j);
  }
  return v;
}

namespace {
template <typename T>
std::vector<T> band_multiply(const SymmetricBandMatrix& K, std::span<const T> x) {
  const std::size_t n = K.size();
  if (x.size() != n) throw DimensionError("SymmetricBandMatrix::multiply: size mismatch");
  std::vector<T> y(n, T{});
  for (std::size_t i = 0; i < n; ++i) y[i] += K.band(0, i) * x[i];
  for (int d = 1; d <= K.bandwidth(); ++d) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!K.cyclic() && i + static_cast<std::size_t>(d) >= n) break;
      const std::size_t j = K.column(d, i);
      const double v = K.band(d, i);
      y[i] += v * x[j];
      y[j] += v * x[i];
    }
  }
  return y;
}
}  // namespace

RealVector SymmetricBandMatrix::multiply(std::span<const double> x) const {
  return band_multiply(*this, x);
}

ComplexVector SymmetricBandMatrix::multiply(std::span<const Complex> x) const {
  return band_multiply(*this, x);
}

Mesh1D build_mesh(double a, double b, std::size_t elements, int k, Topology topology) {
  if (!(b > a) || !std::isfinite(a) || !std::isfinite(b)) {
    throw ConstructionError("build_mesh: degenerate domain");
  }
  if (elements == 0) throw ConstructionError("build_mesh: element count must be >= 1");
  if (topology == Topology::Periodic && elements < 2) {
    throw ConstructionError("build_mesh: periodic topology needs at least 2 elements");
  }

  Mesh1D mesh;
  mesh.a_ = a;
  mesh.b_ = b;
  mesh.elements_ = elements;
  mesh.topology_ = topology;
  mesh.rule_ = gauss_lobatto(k);
  mesh.deriv_ = lagrange_derivative_matrix(mesh.rule_);

  const bool periodic = topology == Topology::Periodic;
  const std::size_t n = elements * static_cast<std::size_t>(k) + (periodic ? 0 : 1);
  const double he = (b - a) / static_cast<double>(elements);

  mesh.coords_.assign(n, 0.0);
  mesh.mass_.assign(n, 0.0);
  mesh.stiffness_ = SymmetricBandMatrix(n, k, periodic);

  const auto& rule = mesh.rule_;
  const auto& D = mesh.deriv_;
  const int np = k + 1;

  // reference element stiffness: sum_q w_q l_a'(x_q) l_b'(x_q)
  RealVector kref(static_cast<std::size_t>(np * np), 0.0);
  for (int p = 0; p < np; ++p) {
    for (int q = 0; q < np; ++q) {
      double s = 0.0;
      for (int r = 0; r < np; ++r) s += rule.weights[r] * D[r * np + p] * D[r * np + q];
      kref[p * np + q] = s;
    }
  }

  for (std::size_t e = 0; e < elements; ++e) {
    const double xl = a + he * static_cast<double>(e);
    for (int p = 0; p < np; ++p) {
      const std::size_t g = mesh.global_index(e, p);
      if (!(periodic && e + 1 == elements && p == k)) {
        mesh.coords_[g] = xl + 0.5 * he * (rule.nodes[p] + 1.0);
      }
      mesh.mass_[g] += 0.5 * he * rule.weights[p];
    }
    for (int p = 0; p < np; ++p) {
      for (int q = p; q < np; ++q) {
        const double v = (2.0 / he) * kref[p * np + q];
        const std::size_t gp = mesh.global_index(e, p);
        // the partner node lies q - p unknowns ahead, also across the periodic seam
        mesh.stiffness_.band(q - p, gp) += v;
      }
    }
  }
  if (!periodic) mesh.coords_.back() = b;
  return mesh;
}

Complex discrete_inner_product(const Mesh1D& mesh, std::span<const Complex> u,
                               std::span<const Complex> v) {
  if (u.size() != mesh.size() || v.size() != mesh.size()) {
    throw DimensionError("discrete_inner_product: size mismatch");
  }
  Complex s{};
  const auto& m = mesh.mass();
  for (std::size_t j = 0; j < u.size(); ++j) s += m[j] * std::conj(u[j]) * v[j];
  return s;
}

double discrete_inner_product(const Mesh1D& mesh, std::span<const double> u,
                              std::span<const double> v) {
  if (u.size() != mesh.size() || v.size() != mesh.size()) {
    throw DimensionError("discrete_inner_product: size mismatch");
  }
  double s = 0.0;
  const auto& m = mesh.mass();
  for (std::size_t j = 0; j < u.size(); ++j) s += m[j] * u[j] * v[j];
  return s;
}

ComplexVector nodal_derivative(const Mesh1D& mesh, std::span<const Complex> values) {
  return derivative_impl(mesh, values);
}

RealVector nodal_derivative(const Mesh1D& mesh, std::span<const double> values) {
  return derivative_impl(mesh, values);
}

}  // namespace nlswe
