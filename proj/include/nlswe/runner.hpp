#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nlswe/diagnostics.hpp"
#include "nlswe/nls.hpp"
#include "nlswe/scenario.hpp"

namespace nlswe {

/// Everything a run needs, built from a scenario.
struct Setup {
  std::shared_ptr<const Mesh1D> mesh;
  RealVector bathymetry;
  std::optional<SpongeProfile> sponge;
  SolverConfig config;
  WaveField initial;
};

Setup prepare(const Scenario& s);

struct ReferenceSample {
  double h = 0.0;
  double q = 0.0;
  double eta = 0.0;
};

using ReferenceSolution = std::function<ReferenceSample(double x, double t)>;

/// Dispersionless reference for the scenario, or nullopt when none applies.
std::optional<ReferenceSolution> make_reference(const Scenario& s);

struct Snapshot {
  WaveField field;
  HydroState hydro;
  EnergyReport energy;
};

struct RunResult {
  Setup setup;
  std::vector<Snapshot> snapshots;  // initial state, then one per output time > 0
  std::size_t steps = 0;
};

using StepObserver = std::function<void(const WaveField& field, std::size_t step)>;

/// Integrates the scenario to each output time. The last step before an
/// output time is shortened so the time is hit exactly. Throws NumericError
/// carrying the step index when the field stops being finite.
RunResult run(const Scenario& s, const StepObserver& observer = {});

/// Error window at time t, clipped before the right-going shock when the
/// scenario asks for a shock margin.
Window error_window(const Scenario& s, double t);

ErrorReport scenario_error(const Scenario& s, const RunResult& result, const Snapshot& snap, Field field,
                           NormKind kind);

inline constexpr const char* kSnapshotHeader = "x,h_num,h_ref,q_num,q_ref,re_psi,im_psi,b,eta_num,eta_ref";
inline constexpr const char* kDiagnosticsHeader = "t,mass,energy_total,energy_fisher,energy_potential";

/// Writes one CSV row per interior node (sponge layers excluded).
void emit_snapshot(const Scenario& s, const Setup& setup, const Snapshot& snap,
                   const std::optional<ReferenceSolution>& ref, const std::string& path);

void emit_diagnostics(const RunResult& result, const std::string& path);

/// Writes snapshots and the diagnostics log requested by the scenario into
/// `directory`; returns the written paths.
std::vector<std::string> write_outputs(const Scenario& s, const RunResult& result, const std::string& directory);

struct SweepEntry {
  double eps = 0.0;
  ErrorReport error;
};

struct SweepResult {
  std::vector<SweepEntry> entries;
  double order = 0.0;
};

/// Runs the scenario once per eps (concurrently when `parallel`) and fits
/// the convergence order of the final-time error.
SweepResult sweep(const Scenario& base, const std::vector<double>& eps_list, Field field, NormKind kind,
                  bool parallel = true);

void write_sweep_table(const SweepResult& result, const std::string& path);

}  // namespace nlswe
