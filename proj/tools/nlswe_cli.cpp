// Command-line front end: run scenarios, sweep eps, list builtins.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "nlswe/errors.hpp"
#include "nlswe/runner.hpp"
#include "nlswe/scenario.hpp"

namespace {

constexpr int kUsageError = 2;
constexpr int kRuntimeError = 1;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

nlswe::Scenario load(const std::string& source) {
  if (auto s = nlswe::builtin(source)) return *s;
  if (!std::filesystem::exists(source)) {
    throw UsageError("'" + source + "' is neither a builtin scenario nor a readable file (see `list`)");
  }
  std::ifstream in(source);
  std::stringstream text;
  text << in.rdbuf();
  return nlswe::parse_scenario(text.str());
}

std::vector<double> parse_eps_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw UsageError("--eps-list: cannot parse '" + item + "'");
    }
    if (used != item.size() || !(v > 0.0)) throw UsageError("--eps-list: invalid value '" + item + "'");
    out.push_back(v);
  }
  if (out.size() < 2) throw UsageError("--eps-list needs at least two values");
  return out;
}

int cmd_run(const std::string& source, std::optional<double> eps, std::optional<std::string> out_dir,
            std::optional<double> tfinal) {
  nlswe::Scenario s = load(source);
  if (eps) s = nlswe::with_eps(s, *eps);
  if (tfinal) {
    if (!(*tfinal >= 0.0)) throw UsageError("--tfinal must be nonnegative");
    std::vector<double> kept;
    for (double t : s.times) {
      if (t < *tfinal) kept.push_back(t);
    }
    kept.push_back(*tfinal);
    s.times = kept;
  }
  if (out_dir) s.directory = *out_dir;
  nlswe::validate(s);

  std::filesystem::create_directories(s.directory);
  const std::string log_path = (std::filesystem::path(s.directory) / (s.name + "_scenario.ini")).string();
  std::ofstream(log_path) << nlswe::serialize(s);
  std::cerr << "scenario " << s.name << ": eps=" << s.eps << " dx=" << s.dx() << " dt=" << s.time_step()
            << " k=" << s.k << " boundary=" << nlswe::to_string(s.boundary) << "\n";

  const nlswe::RunResult result = nlswe::run(s);
  std::cerr << "mesh: " << result.setup.mesh->elements() << " elements, " << result.steps << " steps\n";
  for (const auto& path : nlswe::write_outputs(s, result, s.directory)) std::cout << path << "\n";
  std::cout << log_path << "\n";
  return 0;
}

int cmd_sweep(const std::string& name, const std::string& eps_list, const std::string& norm,
              const std::string& field, const std::string& out_dir, bool serial) {
  const auto base = nlswe::builtin(name);
  if (!base) throw UsageError("unknown builtin '" + name + "' (see `list`)");
  nlswe::NormKind kind{};
  nlswe::Field f{};
  try {
    kind = nlswe::parse_norm_kind(norm);
    f = nlswe::parse_field(field);
  } catch (const nlswe::ValidationError& e) {
    throw UsageError(e.what());
  }
  const auto eps = parse_eps_list(eps_list);
  const nlswe::SweepResult r = nlswe::sweep(*base, eps, f, kind, !serial);

  std::filesystem::create_directories(out_dir);
  const std::string path = (std::filesystem::path(out_dir) / (name + "_sweep.csv")).string();
  nlswe::write_sweep_table(r, path);
  std::cout << "eps,error\n";
  for (const auto& e : r.entries) std::cout << e.eps << "," << e.error.value << "\n";
  std::cout << "order " << r.order << "\n";
  std::cout << "table " << path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dispersive shallow-water solver via the semiclassical Schroedinger equation"};
  app.require_subcommand(1);

  std::string run_source;
  std::optional<double> run_eps;
  std::optional<std::string> run_out;
  std::optional<double> run_tfinal;
  auto* run = app.add_subcommand("run", "Run a scenario file or builtin and write CSV snapshots");
  run->add_option("scenario", run_source, "Scenario file or builtin name")->required();
  run->add_option("--eps", run_eps, "Override the semiclassical parameter");
  run->add_option("--out", run_out, "Output directory");
  run->add_option("--tfinal", run_tfinal, "Override the final output time");

  std::string sweep_name;
  std::string sweep_eps;
  std::string sweep_norm = "L1";
  std::string sweep_field = "height";
  std::string sweep_out = "out";
  bool sweep_serial = false;
  auto* sw = app.add_subcommand("sweep", "Run a builtin over several eps values and fit the error order");
  sw->add_option("builtin", sweep_name, "Builtin scenario name")->required();
  sw->add_option("--eps-list", sweep_eps, "Comma-separated eps values")->required();
  sw->add_option("--norm", sweep_norm, "L1, L2 or Linf");
  sw->add_option("--field", sweep_field, "height, discharge or surface");
  sw->add_option("--out", sweep_out, "Directory for the error table");
  sw->add_flag("--serial", sweep_serial, "Run eps cases one after another");

  app.add_subcommand("list", "Print builtin scenario names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    if (run->parsed()) return cmd_run(run_source, run_eps, run_out, run_tfinal);
    if (sw->parsed()) return cmd_sweep(sweep_name, sweep_eps, sweep_norm, sweep_field, sweep_out, sweep_serial);
    for (const auto& name : nlswe::builtin_names()) std::cout << name << "\n";
    return 0;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsageError;
  } catch (const nlswe::ParseError& e) {
    std::cerr << "scenario error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntimeError;
  }
}
