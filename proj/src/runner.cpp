#include "nlswe/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <limits>
#include <numbers>

#include "nlswe/errors.hpp"
#include "nlswe/exact.hpp"

namespace nlswe {

namespace {

std::size_t element_count(double length, double dx, bool periodic) {
  const double ratio = length / dx;
  auto m = static_cast<std::size_t>(std::ceil(ratio - 1e-9));
  if (m < (periodic ? 2u : 1u)) m = periodic ? 2 : 1;
  return m;
}

bool finite(const ComplexVector& psi) {
  for (const auto& z : psi) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

Snapshot make_snapshot(const WaveField& field, const Setup& setup) {
  return {field, recover(field), energy(field, setup.bathymetry, setup.config.g)};
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Setup prepare(const Scenario& s) {
  validate(s);
  Setup setup;
  const bool periodic = s.boundary == Boundary::Periodic;
  double half = s.L;
  std::optional<SpongeSize> size;
  if (s.boundary == Boundary::SpongeNeumann) {
    size = sponge_params(s.eps, s.sponge_omega(), s.wavelengths, s.reduction);
    half = s.L + size->ell;
  }
  const std::size_t m = element_count(2.0 * half, s.dx(), periodic);
  setup.mesh = std::make_shared<const Mesh1D>(
      build_mesh(-half, half, m, s.k, periodic ? Topology::Periodic : Topology::Neumann));

  const ScalarFunction b = make_bathymetry(s);
  const auto& x = setup.mesh->coordinates();
  setup.bathymetry.resize(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) setup.bathymetry[j] = b(x[j]);

  if (size) {
    SpongeProfile sp = build_sponge(*setup.mesh, s.L, size->ell, size->sigma_max);
    sp.omega = s.sponge_omega();
    sp.wavelengths = s.wavelengths;
    sp.reduction = s.reduction;
    setup.sponge = std::move(sp);
  }

  setup.config.g = s.g;
  setup.config.eps = s.eps;
  setup.config.dt = s.time_step();
  setup.config.solver = s.solver;
  setup.config.tolerance = s.tolerance;
  validate(setup.config);

  if (s.recipe == InitRecipe::RiemannTanh) {
    InitParams p;
    p.recipe = InitRecipe::RiemannTanh;
    p.hL = s.hL;
    p.uL = s.uL;
    p.hR = s.hR;
    p.uR = s.uR;
    p.delta = s.delta();
    setup.initial = init_riemann(setup.mesh, p, s.eps);
  } else {
    setup.initial = init_softplus_surface(setup.mesh, make_surface(s), b, s.delta(), s.eps);
  }
  return setup;
}

std::optional<ReferenceSolution> make_reference(const Scenario& s) {
  switch (s.reference) {
    case ReferenceKind::None:
      return std::nullopt;
    case ReferenceKind::Riemann: {
      const exact::RiemannData d{s.hL, s.uL, s.hR, s.uR, s.g};
      const exact::WaveStructure ws = exact::classify(d);
      return ReferenceSolution([d, ws](double x, double t) {
        const auto r = exact::sample(d, ws, x, t);
        return ReferenceSample{r.h, r.h * r.u, r.h};
      });
    }
    case ReferenceKind::Thacker:
      return ReferenceSolution([](double x, double t) {
        const auto r = exact::thacker_exact(x, t);
        return ReferenceSample{r.h, r.h * std::sin(std::numbers::sqrt2 * t), r.eta};
      });
    case ReferenceKind::LakeAtRest: {
      const ScalarFunction b = make_bathymetry(s);
      return ReferenceSolution([b](double x, double) {
        const auto r = exact::lake_at_rest_exact(x, b);
        return ReferenceSample{r.h, 0.0, r.h + b(x)};
      });
    }
  }
  return std::nullopt;
}

RunResult run(const Scenario& s, const StepObserver& observer) {
  RunResult result;
  result.setup = prepare(s);
  Setup& setup = result.setup;
  Propagator prop(setup.mesh, setup.bathymetry, setup.sponge, setup.config);

  WaveField field = setup.initial;
  result.snapshots.push_back(make_snapshot(field, setup));
  const double dt = setup.config.dt;

  for (const double target : s.times) {
    const double t0 = field.time;
    if (target <= t0) continue;
    const auto full = static_cast<std::size_t>(std::floor((target - t0) / dt + 1e-9));
    double rest = (target - t0) - static_cast<double>(full) * dt;
    if (rest < 1e-9 * dt) rest = 0.0;
    for (std::size_t i = 1; i <= full + (rest > 0.0 ? 1 : 0); ++i) {
      const bool last_short = i > full;
      prop.step(field, last_short ? rest : dt);
      field.time = last_short ? target : t0 + static_cast<double>(i) * dt;
      ++result.steps;
      if (!finite(field.psi)) throw NumericError("non-finite wave function", result.steps);
      if (observer) observer(field, result.steps);
    }
    field.time = target;
    result.snapshots.push_back(make_snapshot(field, setup));
  }
  return result;
}

Window error_window(const Scenario& s, double t) {
  Window w{s.window_lo, s.window_hi};
  if (s.shock_margin > 0.0 && s.reference == ReferenceKind::Riemann) {
    const exact::RiemannData d{s.hL, s.uL, s.hR, s.uR, s.g};
    const double xs = exact::right_shock_position(exact::classify(d), t);
    if (std::isfinite(xs)) w.hi = std::min(w.hi, xs - s.shock_margin);
  }
  return w;
}

ErrorReport scenario_error(const Scenario& s, const RunResult& result, const Snapshot& snap, Field field,
                           NormKind kind) {
  const auto ref = make_reference(s);
  if (!ref) throw ValidationError("scenario '" + s.name + "' has no reference solution");
  const ReferenceSolution& r = *ref;
  ReferenceField pick = [&r, field](double x, double t) {
    const auto v = r(x, t);
    switch (field) {
      case Field::Height:
        return v.h;
      case Field::Discharge:
        return v.q;
      case Field::Surface:
        return v.eta;
    }
    return 0.0;
  };
  return error_norm(snap.hydro, result.setup.bathymetry, field, pick, error_window(s, snap.field.time), kind,
                    to_string(s.reference));
}

void emit_snapshot(const Scenario& s, const Setup& setup, const Snapshot& snap,
                   const std::optional<ReferenceSolution>& ref, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open snapshot file '" + path + "' for writing");
  out << kSnapshotHeader << '\n';
  const auto& x = setup.mesh->coordinates();
  const double limit = s.L * (1.0 + 1e-12);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (std::abs(x[j]) > limit) continue;
    const ReferenceSample r = ref ? (*ref)(x[j], snap.field.time) : ReferenceSample{nan, nan, nan};
    const double b = setup.bathymetry[j];
    const double h = snap.hydro.h[j];
    const double cols[] = {x[j], h, r.h, snap.hydro.q[j], r.q, snap.field.psi[j].real(), snap.field.psi[j].imag(),
                           b, h + b, r.eta};
    for (std::size_t c = 0; c < std::size(cols); ++c) out << (c ? "," : "") << format_number(cols[c]);
    out << '\n';
  }
  if (!out) throw Error("failed writing snapshot file '" + path + "'");
}

void emit_diagnostics(const RunResult& result, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open diagnostics file '" + path + "' for writing");
  out << kDiagnosticsHeader << '\n';
  for (const auto& snap : result.snapshots) {
    const auto& e = snap.energy;
    out << format_number(snap.field.time) << ',' << format_number(e.mass) << ',' << format_number(e.total) << ','
        << format_number(e.fisher) << ',' << format_number(e.potential) << '\n';
  }
  if (!out) throw Error("failed writing diagnostics file '" + path + "'");
}

std::vector<std::string> write_outputs(const Scenario& s, const RunResult& result, const std::string& directory) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(directory, ec);
  if (ec) throw Error("cannot create output directory '" + directory + "': " + ec.message());

  auto wants = [&](const char* f) { return std::find(s.fields.begin(), s.fields.end(), f) != s.fields.end(); };
  std::vector<std::string> written;
  if (wants("snapshot")) {
    const auto ref = make_reference(s);
    for (const auto& snap : result.snapshots) {
      char stamp[64];
      std::snprintf(stamp, sizeof stamp, "_t%.6f.csv", snap.field.time);
      const std::string path = (fs::path(directory) / (s.name + stamp)).string();
      emit_snapshot(s, result.setup, snap, ref, path);
      written.push_back(path);
    }
  }
  if (wants("diagnostics")) {
    const std::string path = (fs::path(directory) / (s.name + "_diagnostics.csv")).string();
    emit_diagnostics(result, path);
    written.push_back(path);
  }
  return written;
}

SweepResult sweep(const Scenario& base, const std::vector<double>& eps_list, Field field, NormKind kind,
                  bool parallel) {
  if (eps_list.size() < 2) throw ValidationError("sweep: need at least two eps values");
  auto one = [&base, field, kind](double eps) {
    const Scenario s = with_eps(base, eps);
    const RunResult r = run(s);
    return SweepEntry{eps, scenario_error(s, r, r.snapshots.back(), field, kind)};
  };
  SweepResult out;
  if (parallel) {
    std::vector<std::future<SweepEntry>> jobs;
    for (double eps : eps_list) jobs.push_back(std::async(std::launch::async, one, eps));
    for (auto& j : jobs) out.entries.push_back(j.get());
  } else {
    for (double eps : eps_list) out.entries.push_back(one(eps));
  }
  std::vector<std::pair<double, double>> pts;
  for (const auto& e : out.entries) pts.emplace_back(e.eps, e.error.value);
  out.order = convergence_order(pts);
  return out;
}

void write_sweep_table(const SweepResult& result, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open sweep table '" + path + "' for writing");
  out << "eps,error,norm,field,window_lo,window_hi\n";
  for (const auto& e : result.entries) {
    out << format_number(e.eps) << ',' << format_number(e.error.value) << ',' << to_string(e.error.kind) << ','
        << to_string(e.error.field) << ',' << format_number(e.error.window.lo) << ','
        << format_number(e.error.window.hi) << '\n';
  }
  out << "# order," << format_number(result.order) << '\n';
  if (!out) throw Error("failed writing sweep table '" + path + "'");
}

}  // namespace nlswe
