#include "fieldflow/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <vector>

#include "fieldflow/errors.hpp"

namespace fieldflow {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Returns an error message or nothing.
using Setter = std::function<std::optional<std::string>(const std::string&)>;

Setter real(double& target) {
  return [&target](const std::string& v) -> std::optional<std::string> {
    double x = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(x)) return "expected a number, got '" + v + "'";
    target = x;
    return std::nullopt;
  };
}

template <class Int>
Setter integer(Int& target) {
  return [&target](const std::string& v) -> std::optional<std::string> {
    Int x{};
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || ptr != v.data() + v.size()) return "expected an integer, got '" + v + "'";
    target = x;
    return std::nullopt;
  };
}

template <class E>
Setter choice(E& target, std::map<std::string, E> names) {
  return [&target, names](const std::string& v) -> std::optional<std::string> {
    const auto it = names.find(v);
    if (it == names.end()) {
      std::string allowed;
      for (const auto& [k, _] : names) allowed += (allowed.empty() ? "" : "|") + k;
      return "unknown value '" + v + "' (expected " + allowed + ")";
    }
    target = it->second;
    return std::nullopt;
  };
}

Setter text(std::string& target) {
  return [&target](const std::string& v) -> std::optional<std::string> {
    target = v;
    return std::nullopt;
  };
}

Setter boolean(bool& target) {
  return choice(target, std::map<std::string, bool>{{"true", true}, {"false", false}, {"1", true}, {"0", false}});
}

using Schema = std::map<std::string, std::map<std::string, Setter>>;

Schema schema(ScenarioConfig& c) {
  const std::map<std::string, Boundary> boundaries{{"periodic", Boundary::periodic}, {"dirichlet", Boundary::dirichlet}};
  Schema s;
  s["grid"] = {{"n", integer(c.grid.n)}, {"length", real(c.grid.length)}, {"boundary", choice(c.grid.boundary, boundaries)}};
  s["eos"] = {{"kind", choice(c.eos.kind, std::map<std::string, EosKind>{{"polytrope", EosKind::polytrope},
                                                                         {"ideal_gas", EosKind::ideal_gas},
                                                                         {"entropy_table", EosKind::entropy_table}})},
              {"K", real(c.eos.K)},
              {"gamma", real(c.eos.gamma)},
              {"R", real(c.eos.R)},
              {"c_v", real(c.eos.c_v)},
              {"V0", real(c.eos.V0)},
              {"T0", real(c.eos.T0)}};
  s["material"] = {{"M", real(c.material.M)}, {"beta", real(c.material.beta)}};
  s["initial"] = {{"profile", choice(c.initial.profile, std::map<std::string, Profile>{
                                                            {"rest", Profile::rest},
                                                            {"sound_wave", Profile::sound_wave},
                                                            {"thermal_bath", Profile::thermal_bath},
                                                            {"custom", Profile::custom}})},
                  {"amplitude", real(c.initial.amplitude)},
                  {"wavenumber", integer(c.initial.wavenumber)},
                  {"rho0", real(c.initial.rho0)},
                  {"T0", real(c.initial.T0)},
                  {"T_left", real(c.initial.T_left)},
                  {"T_right", real(c.initial.T_right)},
                  {"table", text(c.initial.table)}};
  s["run"] = {{"dt", real(c.run.dt)},
              {"steps", integer(c.run.steps)},
              {"scheme", choice(c.run.scheme, std::map<std::string, Scheme>{{"rk4", Scheme::rk4},
                                                                            {"implicit_midpoint",
                                                                             Scheme::implicit_midpoint}})},
              {"snapshot_every", integer(c.run.snapshot_every)},
              {"seed", integer(c.run.seed)}};
  s["tolerances"] = {{"implicit_stage", real(c.tolerances.implicit_stage)},
                     {"max_iterations", integer(c.tolerances.max_iterations)},
                     {"cfl_guard", boolean(c.tolerances.cfl_guard)},
                     {"fundamental_audit", real(c.tolerances.fundamental_audit)},
                     {"picture_transform", real(c.tolerances.picture_transform)},
                     {"rest_frame", real(c.tolerances.rest_frame)},
                     {"rest_frame_reduction", real(c.tolerances.rest_frame_reduction)},
                     {"functional_derivative", real(c.tolerances.functional_derivative)},
                     {"bracket", real(c.tolerances.bracket)},
                     {"inversion", real(c.tolerances.inversion)}};
  return s;
}

class RangeCheck {
 public:
  explicit RangeCheck(std::vector<std::string>& errors) : errors_(errors) {}

  template <class T>
  void greater(const char* key, T value, double bound) {
    if (!(value > bound)) fail(key, value, "> " + format(bound));
  }
  template <class T>
  void at_least(const char* key, T value, double bound) {
    if (!(value >= bound)) fail(key, value, ">= " + format(bound));
  }

 private:
  static std::string format(double x) {
    std::ostringstream o;
    o << x;
    return o.str();
  }
  template <class T>
  void fail(const char* key, T value, const std::string& rule) {
    std::ostringstream o;
    o << key << " = " << value << " is out of range: must be " << rule;
    errors_.push_back(o.str());
  }
  std::vector<std::string>& errors_;
};

void validate(const ScenarioConfig& c, std::vector<std::string>& errors) {
  RangeCheck r(errors);
  r.at_least("[grid] n", c.grid.n, 8);
  r.greater("[grid] length", c.grid.length, 0.0);
  r.greater("[eos] K", c.eos.K, 0.0);
  r.greater("[eos] gamma", c.eos.gamma, 1.0);
  r.greater("[eos] R", c.eos.R, 0.0);
  r.greater("[eos] c_v", c.eos.c_v, 0.0);
  r.greater("[eos] V0", c.eos.V0, 0.0);
  r.greater("[eos] T0", c.eos.T0, 0.0);
  r.greater("[material] M", c.material.M, 0.0);
  r.greater("[material] beta", c.material.beta, 0.0);
  r.at_least("[initial] amplitude", c.initial.amplitude, 0.0);
  r.at_least("[initial] wavenumber", c.initial.wavenumber, 1);
  r.greater("[initial] rho0", c.initial.rho0, 0.0);
  r.greater("[initial] T0", c.initial.T0, 0.0);
  r.greater("[initial] T_left", c.initial.T_left, 0.0);
  r.greater("[initial] T_right", c.initial.T_right, 0.0);
  r.greater("[run] dt", c.run.dt, 0.0);
  r.at_least("[run] steps", c.run.steps, 0);
  r.at_least("[run] snapshot_every", c.run.snapshot_every, 1);
  r.greater("[tolerances] implicit_stage", c.tolerances.implicit_stage, 0.0);
  r.at_least("[tolerances] max_iterations", c.tolerances.max_iterations, 1);
  r.greater("[tolerances] fundamental_audit", c.tolerances.fundamental_audit, 0.0);
  r.greater("[tolerances] picture_transform", c.tolerances.picture_transform, 0.0);
  r.greater("[tolerances] rest_frame", c.tolerances.rest_frame, 0.0);
  r.greater("[tolerances] rest_frame_reduction", c.tolerances.rest_frame_reduction, 0.0);
  r.greater("[tolerances] functional_derivative", c.tolerances.functional_derivative, 0.0);
  r.greater("[tolerances] bracket", c.tolerances.bracket, 0.0);
  r.greater("[tolerances] inversion", c.tolerances.inversion, 0.0);

  const auto& ini = c.initial;
  if (ini.profile == Profile::sound_wave && c.grid.boundary != Boundary::periodic) {
    errors.push_back("[initial] profile = sound_wave needs [grid] boundary = periodic");
  }
  if (ini.profile == Profile::thermal_bath) {
    if (c.grid.boundary != Boundary::dirichlet) {
      errors.push_back("[initial] profile = thermal_bath needs [grid] boundary = dirichlet");
    }
    if (!c.thermal()) errors.push_back("[initial] profile = thermal_bath needs a thermal [eos] kind");
  }
  if (ini.profile == Profile::custom && ini.table.empty()) {
    errors.push_back("[initial] profile = custom needs a table path");
  }
}

}  // namespace

ScenarioConfig parse_config(const std::string& text_in) {
  ScenarioConfig cfg;
  auto s = schema(cfg);
  // [run] boundary is accepted as an alternative spelling of [grid] boundary.
  Boundary run_boundary = Boundary::periodic;
  s["run"]["boundary"] =
      choice(run_boundary, std::map<std::string, Boundary>{{"periodic", Boundary::periodic}, {"dirichlet", Boundary::dirichlet}});
  std::vector<std::string> errors;
  std::set<std::string> seen_sections;
  std::map<std::string, int> first_line;  // "section.key" -> line
  std::string section;
  bool section_known = false;

  std::istringstream in(text_in);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    if (const auto c = line.find_first_of("#;"); c != std::string::npos) line.erase(c);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (line.front() == '[') {
      if (line.back() != ']') {
        errors.push_back(where + "malformed section header '" + line + "'");
        section_known = false;
        continue;
      }
      section = trim(line.substr(1, line.size() - 2));
      section_known = s.count(section) > 0;
      if (!section_known) errors.push_back(where + "unknown section [" + section + "]");
      seen_sections.insert(section);
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      errors.push_back(where + "expected key = value, got '" + line + "'");
      continue;
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section.empty()) {
      errors.push_back(where + "key '" + key + "' outside any section");
      continue;
    }
    if (!section_known) continue;  // already reported
    const auto& keys = s[section];
    const auto it = keys.find(key);
    if (it == keys.end()) {
      errors.push_back(where + "unknown key '" + key + "' in [" + section + "]");
      continue;
    }
    const std::string id = section + "." + key;
    if (const auto prev = first_line.find(id); prev != first_line.end()) {
      errors.push_back("duplicate key '" + key + "' in [" + section + "] at lines " + std::to_string(prev->second) +
                       " and " + std::to_string(line_no));
      continue;
    }
    first_line[id] = line_no;
    if (const auto err = it->second(value)) errors.push_back(where + "[" + section + "] " + key + ": " + *err);
  }
  for (const char* required : {"grid", "eos", "initial", "run"}) {
    if (!seen_sections.count(required)) errors.push_back(std::string("missing section [") + required + "]");
  }
  if (first_line.count("run.boundary")) {
    if (first_line.count("grid.boundary") && run_boundary != cfg.grid.boundary) {
      errors.push_back("[run] boundary (line " + std::to_string(first_line["run.boundary"]) +
                       ") contradicts [grid] boundary (line " + std::to_string(first_line["grid.boundary"]) + ")");
    }
    cfg.grid.boundary = run_boundary;
  }
  validate(cfg, errors);
  if (!errors.empty()) throw ConfigError(errors);
  return cfg;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError({"cannot read config file '" + path + "'"});
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse_config(buf.str());
}

void apply_environment(ScenarioConfig& cfg) {
  const char* env = std::getenv("FIELDFLOW_SEED");
  if (!env) return;
  const std::string v = env;
  std::uint64_t seed = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), seed);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw ConfigError({"FIELDFLOW_SEED must be an unsigned integer, got '" + v + "'"});
  }
  cfg.run.seed = seed;
}

const char* to_string(EosKind kind) {
  switch (kind) {
    case EosKind::polytrope: return "polytrope";
    case EosKind::ideal_gas: return "ideal_gas";
    case EosKind::entropy_table: return "entropy_table";
  }
  return "?";
}

const char* to_string(Profile profile) {
  switch (profile) {
    case Profile::rest: return "rest";
    case Profile::sound_wave: return "sound_wave";
    case Profile::thermal_bath: return "thermal_bath";
    case Profile::custom: return "custom";
  }
  return "?";
}

const char* to_string(Scheme scheme) { return scheme == Scheme::rk4 ? "rk4" : "implicit_midpoint"; }

}  // namespace fieldflow
