#include "nlswe/exact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "nlswe/errors.hpp"

namespace nlswe::exact {

double RiemannData::aL() const { return std::sqrt(g * hL); }
double RiemannData::aR() const { return std::sqrt(g * hR); }

double depth_function(double h, double hK, double g) {
  if (h <= hK) return 2.0 * (std::sqrt(g * h) - std::sqrt(g * hK));
  return (h - hK) * std::sqrt(0.5 * g * (h + hK) / (h * hK));
}

double depth_function_derivative(double h, double hK, double g) {
  if (h <= hK) return std::sqrt(g / h);
  const double G = 0.5 * g * (1.0 / h + 1.0 / hK);
  return std::sqrt(G) - (h - hK) * g / (4.0 * h * h * std::sqrt(G));
}

StarState star_state(const RiemannData& d) {
  if (!(d.hL > 0.0) || !(d.hR > 0.0)) {
    throw RootFindingError("star_state: both states must be wet");
  }
  const double du = d.uR - d.uL;
  if (2.0 * (d.aL() + d.aR()) <= du) {
    throw RootFindingError("star_state: data generates vacuum");
  }
  auto f = [&](double h) { return depth_function(h, d.hL, d.g) + depth_function(h, d.hR, d.g) + du; };
  auto df = [&](double h) {
    return depth_function_derivative(h, d.hL, d.g) + depth_function_derivative(h, d.hR, d.g);
  };

  // f is increasing, f(0) = du - 2(aL + aR) < 0
  double lo = 0.0;
  double hi = std::max(d.hL, d.hR);
  while (f(hi) < 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e300) throw RootFindingError("star_state: no upper bracket");
  }

  // two-rarefaction approximation as the starting guess
  const double a0 = 0.5 * (d.aL() + d.aR()) - 0.25 * du;
  double h = std::clamp(a0 > 0.0 ? a0 * a0 / d.g : 0.5 * (lo + hi), lo, hi);
  if (h <= lo || h >= hi) h = 0.5 * (lo + hi);

  StarState s;
  for (int it = 0; it < 200; ++it) {
    const double fh = f(h);
    if (std::abs(fh) <= 1e-14) break;
    if (fh < 0.0) {
      lo = h;
    } else {
      hi = h;
    }
    double next = h - fh / df(h);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - h) <= 1e-16 * std::max(1.0, h)) {
      h = next;
      break;
    }
    h = next;
  }
  if (std::abs(f(h)) > 1e-12) throw RootFindingError("star_state: residual above 1e-12");
  s.h = h;
  s.u = 0.5 * (d.uL + d.uR) + 0.5 * (depth_function(h, d.hR, d.g) - depth_function(h, d.hL, d.g));
  return s;
}

namespace {

WaveStructure classify_unmirrored(const RiemannData& d) {
  WaveStructure s;
  const double aL = d.aL();
  const double aR = d.aR();
  if (d.hL <= 0.0 && d.hR <= 0.0) {
    s.classification = Classification::AllDry;
    return s;
  }
  if (d.hR <= 0.0) {
    s.classification = Classification::SingleRarefactionDry;
    s.left = WaveKind::Rarefaction;
    s.left_head = d.uL - aL;
    s.left_tail = d.uL + 2.0 * aL;
    s.vacuum_left = s.left_tail;
    s.vacuum_right = std::numeric_limits<double>::infinity();
    return s;
  }
  if (2.0 * (aL + aR) <= d.uR - d.uL) {
    s.classification = Classification::TwoRarefactionsVacuum;
    s.left = WaveKind::Rarefaction;
    s.right = WaveKind::Rarefaction;
    s.left_head = d.uL - aL;
    s.left_tail = d.uL + 2.0 * aL;
    s.right_tail = d.uR - 2.0 * aR;
    s.right_head = d.uR + aR;
    s.vacuum_left = s.left_tail;
    s.vacuum_right = s.right_tail;
    return s;
  }

  const StarState st = star_state(d);
  s.h_star = st.h;
  s.u_star = st.u;
  const double as = std::sqrt(d.g * st.h);
  if (st.h > d.hL) {
    s.left = WaveKind::Shock;
    const double qL = std::sqrt(0.5 * (st.h + d.hL) * st.h / (d.hL * d.hL));
    s.left_head = s.left_tail = d.uL - aL * qL;
  } else {
    s.left = WaveKind::Rarefaction;
    s.left_head = d.uL - aL;
    s.left_tail = st.u - as;
  }
  if (st.h > d.hR) {
    s.right = WaveKind::Shock;
    const double qR = std::sqrt(0.5 * (st.h + d.hR) * st.h / (d.hR * d.hR));
    s.right_head = s.right_tail = d.uR + aR * qR;
  } else {
    s.right = WaveKind::Rarefaction;
    s.right_tail = st.u + as;
    s.right_head = d.uR + aR;
  }
  using C = Classification;
  if (s.left == WaveKind::Shock) {
    s.classification = s.right == WaveKind::Shock ? C::TwoShocks : C::ShockRarefaction;
  } else {
    s.classification = s.right == WaveKind::Shock ? C::RarefactionShock : C::TwoRarefactions;
  }
  return s;
}

RiemannData mirror(const RiemannData& d) { return {d.hR, -d.uR, d.hL, -d.uL, d.g}; }

Sample sample_unmirrored(const RiemannData& d, const WaveStructure& s, double xi) {
  const double aL = d.aL();
  const double aR = d.aR();
  auto left_fan = [&](double z) {
    const double a = (d.uL + 2.0 * aL - z) / 3.0;
    return Sample{a * a / d.g, (d.uL + 2.0 * aL + 2.0 * z) / 3.0};
  };
  auto right_fan = [&](double z) {
    const double a = (-d.uR + 2.0 * aR + z) / 3.0;
    return Sample{a * a / d.g, (d.uR - 2.0 * aR + 2.0 * z) / 3.0};
  };
  const Sample left{d.hL, d.uL};
  const Sample right{d.hR, d.uR};

  switch (s.classification) {
    case Classification::AllDry:
      return {};
    case Classification::SingleRarefactionDry:
      if (xi <= s.left_head) return left;
      if (xi >= s.vacuum_left) return {};
      return left_fan(xi);
    case Classification::TwoRarefactionsVacuum:
      if (xi <= s.left_head) return left;
      if (xi >= s.right_head) return right;
      if (xi < s.vacuum_left) return left_fan(xi);
      if (xi > s.vacuum_right) return right_fan(xi);
      return {};
    default:
      break;
  }

  const Sample star{s.h_star, s.u_star};
  if (xi <= s.u_star) {
    if (s.left == WaveKind::Shock) return xi < s.left_head ? left : star;
    if (xi <= s.left_head) return left;
    if (xi >= s.left_tail) return star;
    return left_fan(xi);
  }
  if (s.right == WaveKind::Shock) return xi > s.right_head ? right : star;
  if (xi >= s.right_head) return right;
  if (xi <= s.right_tail) return star;
  return right_fan(xi);
}

}  // namespace

WaveStructure classify(const RiemannData& d) {
  if (d.hL < 0.0 || d.hR < 0.0 || !(d.g > 0.0)) {
    throw InvalidStateError("classify: heights must be nonnegative and g positive");
  }
  if (d.hL <= 0.0 && d.hR > 0.0) {
    WaveStructure s = classify_unmirrored(mirror(d));
    s.mirrored = true;
    return s;
  }
  return classify_unmirrored(d);
}

Sample sample(const RiemannData& d, const WaveStructure& s, double x, double t) {
  if (t <= 0.0) return x < 0.0 ? Sample{d.hL, d.uL} : Sample{d.hR, d.uR};
  Sample r;
  if (s.mirrored) {
    r = sample_unmirrored(mirror(d), s, -x / t);
    r.u = -r.u;
  } else {
    r = sample_unmirrored(d, s, x / t);
  }
  if (r.h <= 0.0) r = {};
  return r;
}

double right_shock_position(const WaveStructure& s, double t) {
  if (s.mirrored) {
    return s.left == WaveKind::Shock ? -s.left_head * t : std::numeric_limits<double>::quiet_NaN();
  }
  return s.right == WaveKind::Shock ? s.right_head * t : std::numeric_limits<double>::quiet_NaN();
}

double thacker_bathymetry(double x) { return x * x; }

double thacker_initial_surface(double x) {
  return std::max(0.5 - std::numbers::sqrt2 * x, thacker_bathymetry(x));
}

SurfaceSample thacker_exact(double x, double t) {
  constexpr double r2 = std::numbers::sqrt2;
  const double b = thacker_bathymetry(x);
  const double wet = 0.75 - 0.25 * std::cos(2.0 * r2 * t) - r2 * x * std::cos(r2 * t);
  const double eta = std::max(wet, b);
  return {std::max(eta - b, 0.0), eta};
}

Sample lake_at_rest_exact(double x, const std::function<double(double)>& b) {
  return {std::max(1.0 - b(x), 0.0), 0.0};
}

}  // namespace nlswe::exact
