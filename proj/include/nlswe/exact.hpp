#pragma once

#include <functional>

namespace nlswe::exact {

/// Two constant shallow-water states separated at x = 0 over a flat bottom.
struct RiemannData {
  double hL = 0.0;
  double uL = 0.0;
  double hR = 0.0;
  double uR = 0.0;
  double g = 1.0;

  double aL() const;
  double aR() const;
};

enum class Classification {
  AllDry,
  SingleRarefactionDry,  // single rarefaction into a dry bed (either side)
  TwoRarefactions,
  RarefactionShock,
  ShockRarefaction,
  TwoShocks,
  TwoRarefactionsVacuum,
};

enum class WaveKind { None, Rarefaction, Shock };

/// Wave pattern of a Riemann solution, with all speeds in the frame of the
/// (possibly mirrored) data. Rarefactions span [head, tail] on the left and
/// [tail, head] on the right; a shock has head == tail == shock speed.
struct WaveStructure {
  Classification classification = Classification::AllDry;
  bool mirrored = false;  // data was reflected x -> -x, u -> -u
  double h_star = 0.0;
  double u_star = 0.0;
  WaveKind left = WaveKind::None;
  WaveKind right = WaveKind::None;
  double left_head = 0.0;
  double left_tail = 0.0;
  double right_tail = 0.0;
  double right_head = 0.0;
  // dry-front speeds; meaningful for SingleRarefactionDry and vacuum cases
  double vacuum_left = 0.0;
  double vacuum_right = 0.0;
};

struct StarState {
  double h = 0.0;
  double u = 0.0;
};

/// Depth function f_K(h): rarefaction branch for h <= h_K, shock branch above.
double depth_function(double h, double hK, double g);
double depth_function_derivative(double h, double hK, double g);

WaveStructure classify(const RiemannData& d);

/// Solves f_L(h*) + f_R(h*) + uR - uL = 0 by safeguarded Newton iteration.
/// Requires two wet states without vacuum generation.
StarState star_state(const RiemannData& d);

struct Sample {
  double h = 0.0;
  double u = 0.0;
};

/// Self-similar solution at (x, t); t <= 0 returns the raw Riemann data.
Sample sample(const RiemannData& d, const WaveStructure& s, double x, double t);

/// Position of the right-going shock at time t, if the structure has one.
/// Returns NaN otherwise.
double right_shock_position(const WaveStructure& s, double t);

struct SurfaceSample {
  double h = 0.0;
  double eta = 0.0;
};

/// Periodic oscillating lake over b(x) = x^2 with g = 1.
SurfaceSample thacker_exact(double x, double t);
double thacker_bathymetry(double x);
double thacker_initial_surface(double x);

/// Lake at rest with unit surface level: h = (1 - b)_+, u = 0.
Sample lake_at_rest_exact(double x, const std::function<double(double)>& b);

}  // namespace nlswe::exact
