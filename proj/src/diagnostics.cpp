#include "nlswe/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "nlswe/errors.hpp"

namespace nlswe {

namespace {

// (1/2) int |d/dx f|^2 over the mesh with element Gauss-Lobatto quadrature.
template <typename T>
double half_gradient_energy(const Mesh1D& mesh, std::span<const T> f) {
  const int k = mesh.degree();
  const int np = k + 1;
  const auto& D = mesh.derivative_matrix();
  const auto& w = mesh.rule().weights;
  const double he = mesh.element_length();
  const double jac = 2.0 / he;
  double s = 0.0;
  for (std::size_t e = 0; e < mesh.elements(); ++e) {
    for (int q = 0; q < np; ++q) {
      T d{};
      for (int j = 0; j < np; ++j) d += D[q * np + j] * f[mesh.global_index(e, j)];
      s += 0.5 * he * w[q] * std::norm(jac * d);
    }
  }
  return 0.5 * s;
}

}  // namespace

EnergyReport energy(const WaveField& psi, std::span<const double> b, double g) {
  const Mesh1D& mesh = *psi.mesh;
  if (b.size() != mesh.size() || psi.psi.size() != mesh.size()) {
    throw DimensionError("energy: size mismatch");
  }
  const double eps2 = psi.eps * psi.eps;
  const auto& m = mesh.mass();
  RealVector modulus(psi.psi.size());
  EnergyReport r;
  for (std::size_t j = 0; j < psi.psi.size(); ++j) {
    const double h = std::norm(psi.psi[j]);
    modulus[j] = std::abs(psi.psi[j]);
    r.mass += m[j] * h;
    r.potential += m[j] * (0.5 * g * h * h + g * b[j] * h);
  }
  const double gradient = eps2 * half_gradient_energy<Complex>(mesh, psi.psi);
  r.fisher = eps2 * half_gradient_energy<double>(mesh, modulus);
  r.total = gradient + r.potential;
  r.kinetic = gradient - r.fisher;
  return r;
}

ErrorReport error_norm(const HydroState& num, std::span<const double> b, Field field,
                       const ReferenceField& ref, Window window, NormKind kind,
                       std::string reference_tag) {
  const Mesh1D& mesh = *num.mesh;
  if (!(window.hi > window.lo)) throw ValidationError("error_norm: empty window");
  const double tol = 1e-12 * (mesh.b() - mesh.a());
  if (window.lo < mesh.a() - tol || window.hi > mesh.b() + tol) {
    throw ValidationError("error_norm: window outside the domain");
  }
  if (field == Field::Surface && b.size() != mesh.size()) {
    throw DimensionError("error_norm: bathymetry size mismatch");
  }

  auto numerical = [&](std::size_t j) {
    switch (field) {
      case Field::Height:
        return num.h[j];
      case Field::Discharge:
        return num.q[j];
      case Field::Surface:
        return num.h[j] + b[j];
    }
    return 0.0;
  };

  const int np = mesh.degree() + 1;
  const double he = mesh.element_length();
  const auto& w = mesh.rule().weights;
  const auto& rnodes = mesh.rule().nodes;

  ErrorReport r;
  r.kind = kind;
  r.window = window;
  r.field = field;
  r.reference = std::move(reference_tag);
  double acc = 0.0;
  for (std::size_t e = 0; e < mesh.elements(); ++e) {
    const double xl = mesh.a() + he * static_cast<double>(e);
    const double mid = xl + 0.5 * he;
    if (mid < window.lo || mid > window.hi) continue;
    r.measure += he;
    for (int p = 0; p < np; ++p) {
      const double x = xl + 0.5 * he * (rnodes[p] + 1.0);
      const double err = std::abs(numerical(mesh.global_index(e, p)) - ref(x, num.time));
      switch (kind) {
        case NormKind::L1:
          acc += 0.5 * he * w[p] * err;
          break;
        case NormKind::L2:
          acc += 0.5 * he * w[p] * err * err;
          break;
        case NormKind::Linf:
          acc = std::max(acc, err);
          break;
      }
    }
  }
  if (r.measure == 0.0) throw ValidationError("error_norm: window contains no elements");
  r.value = kind == NormKind::L2 ? std::sqrt(acc) : acc;
  return r;
}

double convergence_order(const std::vector<std::pair<double, double>>& errors) {
  if (errors.size() < 2) throw ValidationError("convergence_order: need at least two entries");
  std::set<double> distinct;
  double sx = 0.0;
  double sy = 0.0;
  for (const auto& [eps, value] : errors) {
    if (!(eps > 0.0)) throw ValidationError("convergence_order: eps must be positive");
    if (!(value > 0.0)) throw ValidationError("convergence_order: error values must be positive");
    distinct.insert(eps);
    sx += std::log(eps);
    sy += std::log(value);
  }
  if (distinct.size() != errors.size()) throw ValidationError("convergence_order: eps values must be distinct");
  const double n = static_cast<double>(errors.size());
  const double mx = sx / n;
  const double my = sy / n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (const auto& [eps, value] : errors) {
    const double dx = std::log(eps) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(value) - my);
  }
  return sxy / sxx;
}

std::string to_string(NormKind kind) {
  switch (kind) {
    case NormKind::L1:
      return "L1";
    case NormKind::L2:
      return "L2";
    case NormKind::Linf:
      return "Linf";
  }
  return "?";
}

std::string to_string(Field field) {
  switch (field) {
    case Field::Height:
      return "height";
    case Field::Discharge:
      return "discharge";
    case Field::Surface:
      return "surface";
  }
  return "?";
}

NormKind parse_norm_kind(const std::string& text) {
  if (text == "L1") return NormKind::L1;
  if (text == "L2") return NormKind::L2;
  if (text == "Linf") return NormKind::Linf;
  throw ValidationError("unknown norm '" + text + "' (expected L1, L2 or Linf)");
}

Field parse_field(const std::string& text) {
  if (text == "height") return Field::Height;
  if (text == "discharge") return Field::Discharge;
  if (text == "surface") return Field::Surface;
  throw ValidationError("unknown field '" + text + "' (expected height, discharge or surface)");
}

}  // namespace nlswe
