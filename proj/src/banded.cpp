#include "nlswe/banded.hpp"

#include <algorithm>
#include <cmath>

#include "nlswe/errors.hpp"

namespace nlswe {

BandedLU::BandedLU(std::span<const double> diag, const SymmetricBandMatrix& K, Complex coeff)
    : n_(K.size()) {
  if (diag.size() != n_) throw DimensionError("BandedLU: diagonal size mismatch");

  position_.resize(n_);
  if (K.cyclic()) {
    for (std::size_t pos = 0; pos < n_; ++pos) {
      const std::size_t m = pos / 2;
      position_[pos % 2 == 0 ? m : n_ - 1 - m] = pos;
    }
  } else {
    for (std::size_t i = 0; i < n_; ++i) position_[i] = i;
  }

  std::size_t p = 0;
  K.for_each_coupling([&](std::size_t i, std::size_t j, double) {
    const std::size_t a = position_[i];
    const std::size_t b = position_[j];
    p = std::max(p, a > b ? a - b : b - a);
  });
  p_ = static_cast<int>(p);

  lu_.assign(n_ * width(), Complex{});
  for (std::size_t i = 0; i < n_; ++i) at(position_[i], position_[i]) += diag[i];
  K.for_each_coupling([&](std::size_t i, std::size_t j, double v) {
    const std::size_t a = position_[i];
    const std::size_t b = position_[j];
    at(a, b) += coeff * v;
    if (a != b) at(b, a) += coeff * v;
  });

  const auto pw = static_cast<std::size_t>(p_);
  for (std::size_t i = 0; i < n_; ++i) {
    const Complex pivot = at(i, i);
    if (std::abs(pivot) == 0.0 || !std::isfinite(std::abs(pivot))) {
      throw NumericError("BandedLU: zero pivot at row " + std::to_string(i));
    }
    const std::size_t last = std::min(n_ - 1, i + pw);
    for (std::size_t r = i + 1; r <= last; ++r) {
      const Complex l = at(r, i) / pivot;
      at(r, i) = l;
      if (l == Complex{}) continue;
      for (std::size_t c = i + 1; c <= last; ++c) at(r, c) -= l * at(i, c);
    }
  }
}

ComplexVector BandedLU::solve(std::span<const Complex> rhs) const {
  if (rhs.size() != n_) throw DimensionError("BandedLU::solve: size mismatch");
  const auto pw = static_cast<std::size_t>(p_);
  ComplexVector y(n_);
  for (std::size_t i = 0; i < n_; ++i) y[position_[i]] = rhs[i];
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t first = i > pw ? i - pw : 0;
    Complex s = y[i];
    for (std::size_t c = first; c < i; ++c) s -= at(i, c) * y[c];
    y[i] = s;
  }
  for (std::size_t i = n_; i-- > 0;) {
    const std::size_t last = std::min(n_ - 1, i + pw);
    Complex s = y[i];
    for (std::size_t c = i + 1; c <= last; ++c) s -= at(i, c) * y[c];
    y[i] = s / at(i, i);
  }
  ComplexVector x(n_);
  for (std::size_t i = 0; i < n_; ++i) x[i] = y[position_[i]];
  return x;
}

IterativeResult cocg_solve(std::span<const double> diag, const SymmetricBandMatrix& K, Complex coeff,
                           std::span<const Complex> rhs, std::span<const Complex> initial_guess,
                           double tol, int max_iterations) {
  const std::size_t n = K.size();
  if (diag.size() != n || rhs.size() != n || initial_guess.size() != n) {
    throw DimensionError("cocg_solve: size mismatch");
  }
  auto apply = [&](std::span<const Complex> v) {
    ComplexVector out = K.multiply(v);
    for (std::size_t i = 0; i < n; ++i) out[i] = diag[i] * v[i] + coeff * out[i];
    return out;
  };
  ComplexVector precond(n);
  for (std::size_t i = 0; i < n; ++i) precond[i] = 1.0 / (diag[i] + coeff * K.band(0, i));

  auto norm = [](std::span<const Complex> v) {
    double s = 0.0;
    for (const auto& z : v) s += std::norm(z);
    return std::sqrt(s);
  };
  auto bilinear = [](std::span<const Complex> a, std::span<const Complex> b) {
    Complex s{};
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
  };

  IterativeResult result;
  result.x.assign(initial_guess.begin(), initial_guess.end());
  ComplexVector r = apply(result.x);
  for (std::size_t i = 0; i < n; ++i) r[i] = rhs[i] - r[i];
  const double bnorm = std::max(norm(rhs), 1e-300);
  result.relative_residual = norm(r) / bnorm;
  if (result.relative_residual <= tol) return result;

  ComplexVector z(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = precond[i] * r[i];
  ComplexVector dir = z;
  Complex rho = bilinear(r, z);

  for (int it = 1; it <= max_iterations; ++it) {
    const ComplexVector q = apply(dir);
    const Complex alpha = rho / bilinear(dir, q);
    for (std::size_t i = 0; i < n; ++i) {
      result.x[i] += alpha * dir[i];
      r[i] -= alpha * q[i];
    }
    result.iterations = it;
    result.relative_residual = norm(r) / bnorm;
    if (result.relative_residual <= tol) return result;
    for (std::size_t i = 0; i < n; ++i) z[i] = precond[i] * r[i];
    const Complex rho_next = bilinear(r, z);
    const Complex beta = rho_next / rho;
    rho = rho_next;
    for (std::size_t i = 0; i < n; ++i) dir[i] = z[i] + beta * dir[i];
  }
  throw ToleranceError("cocg_solve: relative residual " + std::to_string(result.relative_residual) +
                       " above tolerance after " + std::to_string(max_iterations) + " iterations");
}

}  // namespace nlswe
