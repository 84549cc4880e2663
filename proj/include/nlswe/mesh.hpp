#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace nlswe {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;
using RealVector = std::vector<double>;

inline constexpr int kMaxDegree = 16;

/// (k+1)-point Gauss-Lobatto rule on the reference element [-1, 1].
struct GaussLobattoRule {
  int degree = 0;
  RealVector nodes;    // ascending, nodes.front() = -1, nodes.back() = 1
  RealVector weights;  // positive, sum to 2
};

/// Gauss-Lobatto nodes and weights for polynomial degree k in [1, 16].
/// Interior nodes are the roots of P_k', located by Newton iteration
/// from Chebyshev-Gauss-Lobatto initial guesses.
GaussLobattoRule gauss_lobatto(int k);

/// Lagrange differentiation matrix on the rule's nodes:
/// D[i][j] = l_j'(x_i), stored row-major, (k+1)^2 entries.
RealVector lagrange_derivative_matrix(const GaussLobattoRule& rule);

enum class Topology { Periodic, Neumann };

/// Symmetric banded matrix with optional cyclic wraparound.
///
/// band(d, i) holds the coupling between unknown i and unknown (i + d),
/// where the column index wraps modulo n for periodic storage. Each stored
/// entry is a distinct coupling; when n is small enough for two band slots
/// to alias the same (i, j) pair, their values add.
class SymmetricBandMatrix {
 public:
  SymmetricBandMatrix() = default;
  SymmetricBandMatrix(std::size_t n, int bandwidth, bool cyclic);

  std::size_t size() const { return n_; }
  int bandwidth() const { return bandwidth_; }
  bool cyclic() const { return cyclic_; }

  double band(int d, std::size_t i) const { return data_[index(d, i)]; }
  double& band(int d, std::size_t i) { return data_[index(d, i)]; }

  // Adds value to the (i, j) coupling, |i - j| <= bandwidth (cyclically).
  void add(std::size_t i, std::size_t j, double value);

  // Dense entry (i, j) summed over all aliases.
  double entry(std::size_t i, std::size_t j) const;

  // y = K x for real or complex x.
  RealVector multiply(std::span<const double> x) const;
  ComplexVector multiply(std::span<const Complex> x) const;

  // Visits every stored coupling as (row, col, value); each off-diagonal
  // band slot is reported once with row < its partner in band order.
  template <typename F>
  void for_each_coupling(F&& visit) const {
    for (int d = 0; d <= bandwidth_; ++d) {
      for (std::size_t i = 0; i < n_; ++i) {
        if (!cyclic_ && i + static_cast<std::size_t>(d) >= n_) break;
        const double v = band(d, i);
        if (v != 0.0) visit(i, column(d, i), v);
      }
    }
  }

  std::size_t column(int d, std::size_t i) const {
    return cyclic_ ? (i + static_cast<std::size_t>(d)) % n_ : i + static_cast<std::size_t>(d);
  }

 private:
  std::size_t index(int d, std::size_t i) const { return static_cast<std::size_t>(d) * n_ + i; }

  std::size_t n_ = 0;
  int bandwidth_ = 0;
  bool cyclic_ = false;
  RealVector data_;
};

/// Uniform one-dimensional spectral-element mesh with lumped (diagonal)
/// Gauss-Lobatto mass and assembled stiffness.
///
/// Unknowns are numbered left to right. Element e owns local nodes
/// e*k .. e*k + k; for periodic topology the last physical node is
/// identified with unknown 0.
class Mesh1D {
 public:
  double a() const { return a_; }
  double b() const { return b_; }
  std::size_t elements() const { return elements_; }
  int degree() const { return rule_.degree; }
  Topology topology() const { return topology_; }
  double element_length() const { return (b_ - a_) / static_cast<double>(elements_); }

  // Number of unknowns: M*k + 1 (Neumann) or M*k (periodic).
  std::size_t size() const { return coords_.size(); }

  const RealVector& coordinates() const { return coords_; }
  const RealVector& mass() const { return mass_; }
  const SymmetricBandMatrix& stiffness() const { return stiffness_; }
  const GaussLobattoRule& rule() const { return rule_; }
  const RealVector& derivative_matrix() const { return deriv_; }

  // Global unknown of local node `local` (0..k) of element `e`.
  std::size_t global_index(std::size_t e, int local) const {
    const std::size_t g = e * static_cast<std::size_t>(rule_.degree) + static_cast<std::size_t>(local);
    return g == coords_.size() ? 0 : g;
  }

  friend Mesh1D build_mesh(double a, double b, std::size_t elements, int k, Topology topology);

 private:
  double a_ = 0.0;
  double b_ = 0.0;
  std::size_t elements_ = 0;
  Topology topology_ = Topology::Neumann;
  GaussLobattoRule rule_;
  RealVector deriv_;
  RealVector coords_;
  RealVector mass_;
  SymmetricBandMatrix stiffness_;
};

Mesh1D build_mesh(double a, double b, std::size_t elements, int k, Topology topology);

/// Discrete L2 inner product sum_j m_j conj(u_j) v_j.
Complex discrete_inner_product(const Mesh1D& mesh, std::span<const Complex> u,
                               std::span<const Complex> v);

/// Real-valued weighted sum sum_j m_j u_j v_j.
double discrete_inner_product(const Mesh1D& mesh, std::span<const double> u,
                              std::span<const double> v);

/// Element-wise spectral derivative at every unknown; at nodes shared by
/// two elements the one-sided derivatives are averaged.
ComplexVector nodal_derivative(const Mesh1D& mesh, std::span<const Complex> values);
RealVector nodal_derivative(const Mesh1D& mesh, std::span<const double> values);

}  // namespace nlswe
