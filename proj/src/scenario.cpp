#include "nlswe/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "nlswe/errors.hpp"
#include "nlswe/exact.hpp"

namespace nlswe {

namespace pt = boost::property_tree;

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  if (!text.empty() && text.back() == sep) out.emplace_back();
  return out;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double to_double(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    throw ParseError(key, "expected a number, got '" + text + "'");
  }
  return v;
}

int to_int(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    throw ParseError(key, "expected an integer, got '" + text + "'");
  }
  return v;
}

bool to_bool(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  if (t == "true" || t == "1" || t == "yes") return true;
  if (t == "false" || t == "0" || t == "no") return false;
  throw ParseError(key, "expected true or false, got '" + text + "'");
}

template <typename E>
E to_enum(const std::string& key, const std::string& text, const std::map<std::string, E>& table) {
  const auto it = table.find(trim(text));
  if (it == table.end()) {
    std::string options;
    for (const auto& [name, value] : table) options += (options.empty() ? "" : ", ") + name;
    throw ParseError(key, "unknown value '" + text + "' (expected one of: " + options + ")");
  }
  return it->second;
}

const std::map<std::string, Boundary> kBoundaries{
    {"periodic", Boundary::Periodic}, {"neumann", Boundary::Neumann}, {"sponge_neumann", Boundary::SpongeNeumann}};
const std::map<std::string, BathymetryKind> kBathymetries{{"flat", BathymetryKind::Flat},
                                                          {"parabolic", BathymetryKind::Parabolic},
                                                          {"gaussian_bump", BathymetryKind::GaussianBump},
                                                          {"tabulated", BathymetryKind::Tabulated}};
const std::map<std::string, SurfaceKind> kSurfaces{{"thacker", SurfaceKind::Thacker}, {"level", SurfaceKind::Level}};
const std::map<std::string, ReferenceKind> kReferences{{"none", ReferenceKind::None},
                                                       {"riemann", ReferenceKind::Riemann},
                                                       {"thacker", ReferenceKind::Thacker},
                                                       {"lake_at_rest", ReferenceKind::LakeAtRest}};
const std::map<std::string, InitRecipe> kRecipes{{"riemann_tanh", InitRecipe::RiemannTanh},
                                                 {"softplus_surface", InitRecipe::SoftplusSurface}};
const std::map<std::string, DispersiveSolverKind> kSolvers{{"direct", DispersiveSolverKind::DirectBanded},
                                                           {"iterative", DispersiveSolverKind::Iterative}};

template <typename E>
std::string enum_name(E value, const std::map<std::string, E>& table) {
  for (const auto& [name, v] : table) {
    if (v == value) return name;
  }
  return "?";
}

const std::map<std::string, std::set<std::string>> kAllowedKeys{
    {"physics", {"g", "eps"}},
    {"init",
     {"recipe", "hL", "uL", "hR", "uR", "delta_over_eps", "surface", "surface_level", "bathymetry", "b_max",
      "b_table"}},
    {"domain", {"L", "boundary"}},
    {"sponge", {"omega", "wavelengths", "reduction"}},
    {"discretization", {"k", "dx_over_eps", "dt_equals_dx", "dt", "solver", "tolerance"}},
    {"output", {"times", "fields", "directory", "reference", "window", "shock_margin"}},
};

}  // namespace

double Scenario::sponge_omega() const {
  if (omega) return *omega;
  return std::max(std::abs(uL), std::abs(uR)) + std::max(std::sqrt(g * hL), std::sqrt(g * hR));
}

void validate(const Scenario& s) {
  auto require = [](bool ok, const char* key, const std::string& what) {
    if (!ok) throw ParseError(key, what);
  };
  require(!s.name.empty(), "name", "must not be empty");
  require(s.g > 0.0 && std::isfinite(s.g), "physics.g", "must be positive");
  require(s.eps > 0.0 && std::isfinite(s.eps), "physics.eps", "must be positive");
  require(s.delta_over_eps > 0.0, "init.delta_over_eps", "must be positive");
  if (s.recipe == InitRecipe::RiemannTanh) {
    require(s.hL >= 0.0, "init.hL", "must be nonnegative");
    require(s.hR >= 0.0, "init.hR", "must be nonnegative");
  }
  if (s.bathymetry == BathymetryKind::GaussianBump) require(s.b_max >= 0.0, "init.b_max", "must be nonnegative");
  if (s.bathymetry == BathymetryKind::Tabulated) {
    require(s.b_table.size() >= 2, "init.b_table", "needs at least two points");
    for (std::size_t i = 1; i < s.b_table.size(); ++i) {
      require(s.b_table[i].first > s.b_table[i - 1].first, "init.b_table", "x values must increase");
    }
  }
  require(s.L > 0.0, "domain.L", "must be positive");
  if (s.boundary == Boundary::SpongeNeumann) {
    require(!s.omega || *s.omega != 0.0, "sponge.omega", "must be nonzero");
    require(s.sponge_omega() != 0.0, "sponge.omega", "required: no nonzero default from the initial data");
  }
  require(s.wavelengths >= 1, "sponge.wavelengths", "must be >= 1");
  require(s.reduction > 0.0 && s.reduction < 1.0, "sponge.reduction", "must lie in (0, 1)");
  require(s.k >= 1 && s.k <= kMaxDegree, "discretization.k", "must lie in [1, 16]");
  require(s.dx_over_eps > 0.0, "discretization.dx_over_eps", "must be positive");
  if (!s.dt_equals_dx) require(s.dt > 0.0, "discretization.dt", "must be positive");
  require(s.tolerance > 0.0 && s.tolerance <= 1e-6, "discretization.tolerance", "must lie in (0, 1e-6]");
  require(!s.times.empty(), "output.times", "must list at least one time");
  for (std::size_t i = 0; i < s.times.size(); ++i) {
    require(s.times[i] >= 0.0 && std::isfinite(s.times[i]), "output.times", "must be nonnegative");
    if (i > 0) require(s.times[i] >= s.times[i - 1], "output.times", "must be nondecreasing");
  }
  for (const auto& f : s.fields) {
    require(f == "snapshot" || f == "diagnostics", "output.fields", "unknown output '" + f + "'");
  }
  require(s.window_hi > s.window_lo, "output.window", "must be a nonempty interval");
  require(s.window_lo >= -s.L - 1e-12 && s.window_hi <= s.L + 1e-12, "output.window", "must lie in [-L, L]");
  require(s.shock_margin >= 0.0, "output.shock_margin", "must be nonnegative");
  if (s.reference == ReferenceKind::Riemann) {
    require(s.recipe == InitRecipe::RiemannTanh && s.bathymetry == BathymetryKind::Flat, "output.reference",
            "riemann reference needs riemann_tanh data over flat bathymetry");
  }
  if (s.reference == ReferenceKind::Thacker) {
    require(s.bathymetry == BathymetryKind::Parabolic && s.g == 1.0, "output.reference",
            "thacker reference needs parabolic bathymetry and g = 1");
  }
}

namespace {

// Drops trailing "# ..." / "; ..." comments; no scenario value contains either.
std::string strip_inline_comments(const std::string& text) {
  std::istringstream in(text);
  std::string out;
  std::string line;
  while (std::getline(in, line)) {
    const auto at = line.find_first_of("#;");
    if (at != std::string::npos && at > 0 && (line[at - 1] == ' ' || line[at - 1] == '\t')) line.erase(at);
    out += line;
    out += '\n';
  }
  return out;
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
  pt::ptree tree;
  try {
    std::istringstream in(strip_inline_comments(text));
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ParseError("line " + std::to_string(e.line()), e.message());
  }

  for (const auto& [section, node] : tree) {
    if (node.empty()) {
      if (section != "name") throw ParseError(section, "unknown top-level key");
      continue;
    }
    const auto allowed = kAllowedKeys.find(section);
    if (allowed == kAllowedKeys.end()) throw ParseError(section, "unknown section");
    for (const auto& [key, _] : node) {
      if (!allowed->second.count(key)) throw ParseError(section + "." + key, "unknown key");
    }
  }

  auto get = [&](const std::string& path) -> std::optional<std::string> {
    if (auto v = tree.get_optional<std::string>(pt::ptree::path_type(path, '.'))) return *v;
    return std::nullopt;
  };
  auto need = [&](const std::string& path) {
    auto v = get(path);
    if (!v) throw ParseError(path, "missing required key");
    return *v;
  };

  Scenario s;
  s.name = trim(need("name"));
  s.g = to_double("physics.g", get("physics.g").value_or("1"));
  s.eps = to_double("physics.eps", need("physics.eps"));

  s.recipe = to_enum("init.recipe", need("init.recipe"), kRecipes);
  const std::pair<const char*, double*> states[] = {
      {"init.hL", &s.hL}, {"init.uL", &s.uL}, {"init.hR", &s.hR}, {"init.uR", &s.uR}};
  for (const auto& [key, dst] : states) {
    if (auto v = get(key)) {
      *dst = to_double(key, *v);
    } else if (s.recipe == InitRecipe::RiemannTanh) {
      throw ParseError(key, "missing required key");
    }
  }
  if (auto v = get("init.delta_over_eps")) s.delta_over_eps = to_double("init.delta_over_eps", *v);
  if (auto v = get("init.surface")) s.surface = to_enum("init.surface", *v, kSurfaces);
  if (auto v = get("init.surface_level")) s.surface_level = to_double("init.surface_level", *v);
  if (auto v = get("init.bathymetry")) s.bathymetry = to_enum("init.bathymetry", *v, kBathymetries);
  if (auto v = get("init.b_max")) s.b_max = to_double("init.b_max", *v);
  if (auto v = get("init.b_table")) {
    for (const auto& item : split(*v, ',')) {
      const auto pair = split(item, ':');
      if (pair.size() != 2) throw ParseError("init.b_table", "expected x:b pairs separated by commas");
      s.b_table.emplace_back(to_double("init.b_table", pair[0]), to_double("init.b_table", pair[1]));
    }
  }
  if (s.bathymetry == BathymetryKind::GaussianBump && !get("init.b_max")) {
    throw ParseError("init.b_max", "missing required key for gaussian_bump bathymetry");
  }

  if (auto v = get("domain.L")) s.L = to_double("domain.L", *v);
  s.boundary = to_enum("domain.boundary", need("domain.boundary"), kBoundaries);

  if (auto v = get("sponge.omega")) s.omega = to_double("sponge.omega", *v);
  if (auto v = get("sponge.wavelengths")) s.wavelengths = to_int("sponge.wavelengths", *v);
  if (auto v = get("sponge.reduction")) s.reduction = to_double("sponge.reduction", *v);

  if (auto v = get("discretization.k")) s.k = to_int("discretization.k", *v);
  if (auto v = get("discretization.dx_over_eps")) s.dx_over_eps = to_double("discretization.dx_over_eps", *v);
  if (auto v = get("discretization.dt_equals_dx")) s.dt_equals_dx = to_bool("discretization.dt_equals_dx", *v);
  if (auto v = get("discretization.dt")) s.dt = to_double("discretization.dt", *v);
  if (auto v = get("discretization.solver")) s.solver = to_enum("discretization.solver", *v, kSolvers);
  if (auto v = get("discretization.tolerance")) s.tolerance = to_double("discretization.tolerance", *v);

  for (const auto& item : split(need("output.times"), ',')) s.times.push_back(to_double("output.times", item));
  if (auto v = get("output.fields")) {
    s.fields.clear();
    for (const auto& item : split(*v, ',')) {
      if (!item.empty()) s.fields.push_back(item);
    }
  }
  if (auto v = get("output.directory")) s.directory = trim(*v);
  if (auto v = get("output.reference")) s.reference = to_enum("output.reference", *v, kReferences);
  if (auto v = get("output.window")) {
    const auto parts = split(*v, ',');
    if (parts.size() != 2) throw ParseError("output.window", "expected 'lo, hi'");
    s.window_lo = to_double("output.window", parts[0]);
    s.window_hi = to_double("output.window", parts[1]);
  } else {
    s.window_lo = -s.L;
    s.window_hi = s.L;
  }
  if (auto v = get("output.shock_margin")) s.shock_margin = to_double("output.shock_margin", *v);

  validate(s);
  return s;
}

std::string serialize(const Scenario& s) {
  std::ostringstream out;
  out << "name = " << s.name << "\n\n";
  out << "[physics]\n";
  out << "g = " << fmt(s.g) << "\n";
  out << "eps = " << fmt(s.eps) << "\n\n";
  out << "[init]\n";
  out << "recipe = " << enum_name(s.recipe, kRecipes) << "\n";
  out << "hL = " << fmt(s.hL) << "\n";
  out << "uL = " << fmt(s.uL) << "\n";
  out << "hR = " << fmt(s.hR) << "\n";
  out << "uR = " << fmt(s.uR) << "\n";
  out << "delta_over_eps = " << fmt(s.delta_over_eps) << "\n";
  out << "surface = " << enum_name(s.surface, kSurfaces) << "\n";
  out << "surface_level = " << fmt(s.surface_level) << "\n";
  out << "bathymetry = " << enum_name(s.bathymetry, kBathymetries) << "\n";
  out << "b_max = " << fmt(s.b_max) << "\n";
  if (!s.b_table.empty()) {
    out << "b_table = ";
    for (std::size_t i = 0; i < s.b_table.size(); ++i) {
      out << (i ? ", " : "") << fmt(s.b_table[i].first) << ":" << fmt(s.b_table[i].second);
    }
    out << "\n";
  }
  out << "\n[domain]\n";
  out << "L = " << fmt(s.L) << "\n";
  out << "boundary = " << enum_name(s.boundary, kBoundaries) << "\n\n";
  out << "[sponge]\n";
  if (s.omega) out << "omega = " << fmt(*s.omega) << "\n";
  out << "wavelengths = " << s.wavelengths << "\n";
  out << "reduction = " << fmt(s.reduction) << "\n\n";
  out << "[discretization]\n";
  out << "k = " << s.k << "\n";
  out << "dx_over_eps = " << fmt(s.dx_over_eps) << "\n";
  out << "dt_equals_dx = " << (s.dt_equals_dx ? "true" : "false") << "\n";
  out << "dt = " << fmt(s.dt) << "\n";
  out << "solver = " << enum_name(s.solver, kSolvers) << "\n";
  out << "tolerance = " << fmt(s.tolerance) << "\n\n";
  out << "[output]\n";
  out << "times = ";
  for (std::size_t i = 0; i < s.times.size(); ++i) out << (i ? ", " : "") << fmt(s.times[i]);
  out << "\nfields = ";
  for (std::size_t i = 0; i < s.fields.size(); ++i) out << (i ? ", " : "") << s.fields[i];
  out << "\ndirectory = " << s.directory << "\n";
  out << "reference = " << enum_name(s.reference, kReferences) << "\n";
  out << "window = " << fmt(s.window_lo) << ", " << fmt(s.window_hi) << "\n";
  out << "shock_margin = " << fmt(s.shock_margin) << "\n";
  return out.str();
}

namespace {

Scenario riemann_builtin(std::string name, double hL, double uL, double hR, double uR) {
  Scenario s;
  s.name = std::move(name);
  s.recipe = InitRecipe::RiemannTanh;
  s.hL = hL;
  s.uL = uL;
  s.hR = hR;
  s.uR = uR;
  s.boundary = Boundary::Neumann;
  s.times = {0.6};
  s.reference = ReferenceKind::Riemann;
  return s;
}

Scenario lake_builtin(std::string name, double b_max) {
  Scenario s;
  s.name = std::move(name);
  s.recipe = InitRecipe::SoftplusSurface;
  s.surface = SurfaceKind::Level;
  s.surface_level = 1.0;
  s.bathymetry = BathymetryKind::GaussianBump;
  s.b_max = b_max;
  s.boundary = Boundary::Periodic;
  s.times = {1.0};
  s.reference = ReferenceKind::LakeAtRest;
  return s;
}

}  // namespace

std::vector<std::string> builtin_names() {
  return {"dam_break_dry",    "dam_break_wet",    "vacuum_generation", "oscillating_lake",
          "lake_at_rest_wet", "lake_at_rest_dry", "plane_wave"};
}

std::optional<Scenario> builtin(const std::string& name) {
  if (name == "dam_break_dry") return riemann_builtin(name, 1.0, 0.0, 0.0, 0.0);
  if (name == "dam_break_wet") {
    Scenario s = riemann_builtin(name, 1.0, 0.0, 0.2, 0.0);
    s.window_lo = -1.2;
    s.window_hi = 2.0;
    s.shock_margin = 0.2;
    return s;
  }
  if (name == "vacuum_generation") {
    Scenario s = riemann_builtin(name, 1.0, -3.0, 2.0, 3.0);
    s.boundary = Boundary::SpongeNeumann;
    s.omega = 3.0;
    s.times = {0.3};
    s.window_lo = -1.5;
    s.window_hi = 1.5;
    return s;
  }
  if (name == "oscillating_lake") {
    Scenario s;
    s.name = name;
    s.recipe = InitRecipe::SoftplusSurface;
    s.surface = SurfaceKind::Thacker;
    s.bathymetry = BathymetryKind::Parabolic;
    s.boundary = Boundary::Neumann;
    s.times = {2.0, 3.0, 4.0};
    s.reference = ReferenceKind::Thacker;
    return s;
  }
  if (name == "lake_at_rest_wet") return lake_builtin(name, 0.9);
  if (name == "lake_at_rest_dry") return lake_builtin(name, 1.1);
  if (name == "plane_wave") {
    // A = 1, kappa = 1; ten carrier wavelengths fit the periodic cell at eps = 0.1
    Scenario s = riemann_builtin(name, 1.0, 1.0, 1.0, 1.0);
    s.eps = 0.1;
    s.L = std::numbers::pi;
    s.boundary = Boundary::Periodic;
    s.times = {1.0};
    s.window_lo = -s.L;
    s.window_hi = s.L;
    return s;
  }
  return std::nullopt;
}

Scenario with_eps(Scenario s, double eps) {
  s.eps = eps;
  return s;
}

ScalarFunction make_bathymetry(const Scenario& s) {
  switch (s.bathymetry) {
    case BathymetryKind::Flat:
      return [](double) { return 0.0; };
    case BathymetryKind::Parabolic:
      return [](double x) { return x * x; };
    case BathymetryKind::GaussianBump: {
      const double bm = s.b_max;
      return [bm](double x) { return bm * std::exp(-10.0 * x * x); };
    }
    case BathymetryKind::Tabulated: {
      auto table = s.b_table;
      return [table](double x) {
        if (x <= table.front().first) return table.front().second;
        if (x >= table.back().first) return table.back().second;
        const auto it = std::upper_bound(table.begin(), table.end(), x,
                                         [](double v, const auto& p) { return v < p.first; });
        const auto& [x1, b1] = *it;
        const auto& [x0, b0] = *(it - 1);
        return b0 + (b1 - b0) * (x - x0) / (x1 - x0);
      };
    }
  }
  return [](double) { return 0.0; };
}

ScalarFunction make_surface(const Scenario& s) {
  if (s.surface == SurfaceKind::Thacker) return exact::thacker_initial_surface;
  const double level = s.surface_level;
  return [level](double) { return level; };
}

std::string to_string(Boundary b) { return enum_name(b, kBoundaries); }
std::string to_string(BathymetryKind b) { return enum_name(b, kBathymetries); }
std::string to_string(SurfaceKind s) { return enum_name(s, kSurfaces); }
std::string to_string(ReferenceKind r) { return enum_name(r, kReferences); }
std::string to_string(InitRecipe r) { return enum_name(r, kRecipes); }

}  // namespace nlswe
