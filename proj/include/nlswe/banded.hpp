#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "nlswe/mesh.hpp"

namespace nlswe {

/// LU factorization of A = diag(d) + c K for a symmetric band matrix K and
/// complex scalar c, without pivoting.
///
/// Elimination without pivoting is safe when the Hermitian part of A is
/// positive definite, which holds for d > 0, Re(c) >= 0 and K positive
/// semidefinite (the Crank-Nicolson matrix M + i beta K qualifies).
/// Cyclic matrices are reordered by interleaving both ends of the index
/// range (0, n-1, 1, n-2, ...), which turns the wraparound corners into a
/// band of width 2k+1.
class BandedLU {
 public:
  BandedLU(std::span<const double> diag, const SymmetricBandMatrix& K, Complex coeff);

  std::size_t size() const { return n_; }
  int bandwidth() const { return p_; }

  ComplexVector solve(std::span<const Complex> rhs) const;

 private:
  Complex& at(std::size_t row, std::size_t col) { return lu_[row * width() + (col + p_ - row)]; }
  const Complex& at(std::size_t row, std::size_t col) const {
    return lu_[row * width() + (col + p_ - row)];
  }
  std::size_t width() const { return 2 * static_cast<std::size_t>(p_) + 1; }

  std::size_t n_ = 0;
  int p_ = 0;
  std::vector<std::size_t> position_;  // node -> row in the reordered system
  ComplexVector lu_;
};

struct IterativeResult {
  ComplexVector x;
  int iterations = 0;
  double relative_residual = 0.0;
};

/// Jacobi-preconditioned conjugate orthogonal conjugate gradient for the
/// complex symmetric system (diag(d) + c K) x = rhs.
/// Throws ToleranceError when the relative residual does not reach `tol`
/// within `max_iterations`.
IterativeResult cocg_solve(std::span<const double> diag, const SymmetricBandMatrix& K, Complex coeff,
                           std::span<const Complex> rhs, std::span<const Complex> initial_guess,
                           double tol, int max_iterations);

}  // namespace nlswe
