#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nlswe/madelung.hpp"
#include "nlswe/nls.hpp"

namespace nlswe {

enum class Boundary { Periodic, Neumann, SpongeNeumann };
enum class BathymetryKind { Flat, Parabolic, GaussianBump, Tabulated };
enum class SurfaceKind { Thacker, Level };
enum class ReferenceKind { None, Riemann, Thacker, LakeAtRest };

/// Complete description of one simulation. Length scales tied to eps are
/// stored as ratios so that overriding eps rescales the whole setup.
struct Scenario {
  std::string name;

  // [physics]
  double g = 1.0;
  double eps = 0.01;

  // [init]
  InitRecipe recipe = InitRecipe::RiemannTanh;
  double hL = 0.0;
  double uL = 0.0;
  double hR = 0.0;
  double uR = 0.0;
  double delta_over_eps = 1.2;
  SurfaceKind surface = SurfaceKind::Level;
  double surface_level = 1.0;
  BathymetryKind bathymetry = BathymetryKind::Flat;
  double b_max = 0.0;
  std::vector<std::pair<double, double>> b_table;  // (x, b), x strictly increasing

  // [domain]
  double L = 2.0;
  Boundary boundary = Boundary::Neumann;

  // [sponge]
  std::optional<double> omega;  // defaults to the fastest characteristic speed
  int wavelengths = 16;
  double reduction = 1e-6;

  // [discretization]
  int k = 1;
  double dx_over_eps = 0.05;
  bool dt_equals_dx = true;
  double dt = 0.0;  // used when dt_equals_dx is false
  DispersiveSolverKind solver = DispersiveSolverKind::DirectBanded;
  double tolerance = 1e-12;

  // [output]
  std::vector<double> times;
  std::vector<std::string> fields{"snapshot", "diagnostics"};
  std::string directory = "out";
  ReferenceKind reference = ReferenceKind::None;
  double window_lo = -2.0;
  double window_hi = 2.0;
  double shock_margin = 0.0;  // > 0 clips the window at x_shock(t) - margin

  double dx() const { return dx_over_eps * eps; }
  double delta() const { return delta_over_eps * eps; }
  double time_step() const { return dt_equals_dx ? dx() : dt; }
  double final_time() const { return times.empty() ? 0.0 : times.back(); }
  double sponge_omega() const;

  bool operator==(const Scenario&) const = default;
};

/// Throws ParseError naming the offending key when an invariant fails.
void validate(const Scenario& s);

/// Parses the sectioned key-value text (INI layout: physics, init, domain,
/// sponge, discretization, output). Unknown keys are rejected and defaults
/// are applied for omitted optional keys.
Scenario parse_scenario(const std::string& text);

/// Inverse of parse_scenario; every field is written, doubles with 17
/// significant digits.
std::string serialize(const Scenario& s);

std::vector<std::string> builtin_names();
std::optional<Scenario> builtin(const std::string& name);

/// Returns a copy with eps replaced; all eps-scaled lengths follow.
Scenario with_eps(Scenario s, double eps);

/// Bathymetry b(x) described by the scenario.
ScalarFunction make_bathymetry(const Scenario& s);

/// Initial free surface eta0(x) for softplus initialization.
ScalarFunction make_surface(const Scenario& s);

std::string to_string(Boundary b);
std::string to_string(BathymetryKind b);
std::string to_string(SurfaceKind s);
std::string to_string(ReferenceKind r);
std::string to_string(InitRecipe r);

}  // namespace nlswe
