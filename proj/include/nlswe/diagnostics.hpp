#pragma once

#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nlswe/madelung.hpp"

namespace nlswe {

/// Wave-function energy and its hydrodynamic split. total = kinetic +
/// potential + fisher, where the gradient energy (eps^2/2) int |psi_x|^2
/// equals kinetic + fisher for Madelung states.
struct EnergyReport {
  double kinetic = 0.0;
  double potential = 0.0;
  double fisher = 0.0;
  double total = 0.0;
  double mass = 0.0;
};

EnergyReport energy(const WaveField& psi, std::span<const double> b, double g);

enum class NormKind { L1, L2, Linf };
enum class Field { Height, Discharge, Surface };

struct Window {
  double lo = 0.0;
  double hi = 0.0;
};

struct ErrorReport {
  NormKind kind = NormKind::L1;
  Window window;
  double measure = 0.0;  // total length of the elements that were integrated
  Field field = Field::Height;
  double value = 0.0;
  std::string reference;
};

/// Reference value of the selected field at (x, t).
using ReferenceField = std::function<double(double x, double t)>;

/// Quadrature-weighted error norm over the elements whose midpoints lie in
/// the window. L1 and L2 use element Gauss-Lobatto weights; Linf is the
/// nodal maximum over the same elements.
ErrorReport error_norm(const HydroState& num, std::span<const double> b, Field field,
                       const ReferenceField& ref, Window window, NormKind kind,
                       std::string reference_tag = {});

/// Least-squares slope of log(value) against log(eps).
double convergence_order(const std::vector<std::pair<double, double>>& errors);

std::string to_string(NormKind kind);
std::string to_string(Field field);
NormKind parse_norm_kind(const std::string& text);
Field parse_field(const std::string& text);

}  // namespace nlswe
