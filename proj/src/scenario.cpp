#include "fieldflow/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "fieldflow/errors.hpp"

namespace fieldflow {

ScenarioModel build_model(const ScenarioConfig& cfg) {
  const MaterialConstants constants{cfg.material.M, cfg.material.beta, 1.0};
  constants.validate();
  const auto& e = cfg.eos;
  switch (e.kind) {
    case EosKind::polytrope: {
      BarotropicFluid b{BarotropicEos::polytrope(e.K, e.gamma), constants};
      return {CanonicalFluid::from(b), std::nullopt, b};
    }
    case EosKind::ideal_gas: {
      ThermalFluid t{ThermalEos::ideal_gas(e.R, e.c_v, e.V0, e.T0), constants};
      return {CanonicalFluid::from(t), t, std::nullopt};
    }
    case EosKind::entropy_table: {
      ThermalFluid t{ThermalEos::from_entropy_form(EntropyForm::ideal_gas(e.R, e.c_v, e.V0, e.T0)), constants};
      return {CanonicalFluid::from(t), t, std::nullopt};
    }
  }
  throw std::logic_error("unhandled EOS kind");
}

Grid1D build_grid(const ScenarioConfig& cfg) {
  return cfg.grid.boundary == Boundary::periodic ? Grid1D::periodic(cfg.grid.n, cfg.grid.length)
                                                 : Grid1D::dirichlet(cfg.grid.n, cfg.grid.length);
}

NodeProfile load_profile_table(const std::string& path, int n) {
  std::ifstream f(path);
  if (!f) throw ConfigError({"cannot read profile table '" + path + "'"});
  std::string line;
  if (!std::getline(f, line)) throw ConfigError({"profile table '" + path + "' is empty"});
  line.erase(std::remove_if(line.begin(), line.end(), [](char c) { return c == ' ' || c == '\r'; }), line.end());
  if (line != "rho,v,T") throw ConfigError({"profile table header must be rho,v,T, got '" + line + "'"});
  NodeProfile p;
  int row = 1;
  while (std::getline(f, line)) {
    ++row;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream in(line);
    double rho = 0.0, v = 0.0, T = 0.0;
    if (!(in >> rho >> v >> T)) throw ConfigError({"profile table row " + std::to_string(row) + " is malformed"});
    p.rho.push_back(rho);
    p.v.push_back(v);
    p.T.push_back(T);
  }
  if (static_cast<int>(p.rho.size()) != n) {
    throw ConfigError({"profile table has " + std::to_string(p.rho.size()) + " rows, grid has " + std::to_string(n)});
  }
  return p;
}

namespace {

// Labels y(x) with y_x = rho. Closed form for the analytic profiles,
// cumulative trapezoid for tables.
struct Labels {
  std::vector<double> y;
  double jump = 0.0;
};

Labels labels_from_density(const Grid1D& g, const std::vector<double>& rho) {
  Labels l;
  l.y.assign(g.n, 0.0);
  for (int i = 1; i < g.n; ++i) l.y[i] = l.y[i - 1] + 0.5 * g.h * (rho[i - 1] + rho[i]);
  if (g.is_periodic()) l.jump = l.y[g.n - 1] + 0.5 * g.h * (rho[g.n - 1] + rho[0]);
  return l;
}

}  // namespace

CanonicalState initial_state(const ScenarioConfig& cfg, const ScenarioModel& model) {
  const Grid1D g = build_grid(cfg);
  const auto& ini = cfg.initial;
  const double M = cfg.material.M, beta = cfg.material.beta;
  NodeProfile prof;
  Labels labels;
  prof.rho.assign(g.n, ini.rho0);
  prof.v.assign(g.n, 0.0);
  prof.T.assign(g.n, ini.T0);

  switch (ini.profile) {
    case Profile::rest:
      labels.y.resize(g.n);
      for (int i = 0; i < g.n; ++i) labels.y[i] = ini.rho0 * g.x(i);
      labels.jump = g.is_periodic() ? ini.rho0 * g.length() : 0.0;
      break;
    case Profile::sound_wave: {
      const double k = 2.0 * std::numbers::pi * ini.wavenumber / g.length();
      const double V0 = 1.0 / ini.rho0;
      double c2 = 0.0, s0 = 0.0;
      if (model.thermal) {
        s0 = thermal_response(model.thermal->eos, V0, ini.T0).s;
        c2 = model.fluid.model.sound_speed_squared(V0, s0, M);
      } else {
        c2 = model.barotropic->eos.sound_speed_squared(V0, M);
      }
      const double c = std::sqrt(c2);
      labels.y.resize(g.n);
      for (int i = 0; i < g.n; ++i) {
        const double x = g.x(i);
        const double wave = ini.amplitude * std::cos(k * x);
        prof.rho[i] = ini.rho0 * (1.0 + wave);
        prof.v[i] = c * wave;
        labels.y[i] = ini.rho0 * (x + ini.amplitude * std::sin(k * x) / k);
      }
      labels.jump = ini.rho0 * g.length();
      // Isentropic with respect to the discrete density the state will carry.
      const auto rho_d = derivative(g, labels.y, labels.jump);
      for (int i = 0; i < g.n && model.thermal; ++i) {
        if (!(rho_d[i] > 0.0)) break;  // reported below
        prof.T[i] = model.thermal->eos.temperature_at_entropy(1.0 / rho_d[i], s0);
      }
      break;
    }
    case Profile::thermal_bath: {
      labels.y.resize(g.n);
      for (int i = 0; i < g.n; ++i) {
        const double a = static_cast<double>(i) / (g.n - 1);
        labels.y[i] = ini.rho0 * g.x(i);
        prof.T[i] = ini.T_left + a * (ini.T_right - ini.T_left);
      }
      break;
    }
    case Profile::custom:
      prof = load_profile_table(ini.table, g.n);
      for (double r : prof.rho) {
        if (!(r > 0.0)) throw ConfigurationError("profile table density must be positive");
      }
      labels = labels_from_density(g, prof.rho);
      break;
  }
  for (int i = 0; i < g.n; ++i) {
    if (!(prof.rho[i] > 0.0)) {
      throw ConfigurationError("initial density " + std::to_string(prof.rho[i]) + " at node " + std::to_string(i) +
                               " is not positive: the label map folds");
    }
  }

  const auto y_x = derivative(g, labels.y, labels.jump);
  for (int i = 0; i < g.n; ++i) {
    if (!(y_x[i] > 0.0)) throw ConfigurationError("discrete label gradient is not positive at node " + std::to_string(i));
  }
  GridField y{labels.y, std::vector<double>(g.n), labels.jump};
  for (int i = 0; i < g.n; ++i) y.rate[i] = -prof.v[i] * y_x[i];

  CanonicalState cs;
  if (model.thermal) {
    GridField tau{std::vector<double>(g.n, 0.0), std::vector<double>(g.n), 0.0};
    for (int i = 0; i < g.n; ++i) {
      if (!(prof.T[i] > 0.0)) throw DomainError("initial temperature must be positive");
      tau.rate[i] = prof.T[i] / beta;
    }
    cs = to_canonical(ThermoFieldState{g, tau, y}, *model.thermal);
  } else {
    cs = to_canonical(EulerFieldState{g, y}, *model.barotropic);
  }
  if (!g.is_periodic()) {
    DirichletControl c;
    c.tau_left = cs.tau.front();
    c.tau_right = cs.tau.back();
    c.T_left = model.thermal ? prof.T.front() : 0.0;
    c.T_right = model.thermal ? prof.T.back() : 0.0;
    c.y_left = cs.y.front();
    c.y_right = cs.y.back();
    cs.control = c;
  }
  check_state(cs, model.fluid);
  return cs;
}

std::string format_row(const DiagnosticsRow& r) {
  char buf[512];
  std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g", r.t,
                r.norm_el_residual, r.norm_noether, r.norm_dVy, r.energy_total, r.momentum_total, r.mass_total,
                r.entropy_total, r.norm_entropy_residual, r.min_T, r.H_D, r.F_D);
  return buf;
}

DiagnosticsRow diagnostics_row(const CanonicalState& previous, const CanonicalState& current,
                               const CanonicalState& next, const ScenarioModel& model, double dt, Scheme scheme) {
  const auto& g = current.grid;
  const int skip = g.is_periodic() ? 0 : 2;
  DiagnosticsRow row;
  row.t = current.time;

  // Implicit midpoint: residuals between the two stage points, rates from hamilton_rhs.
  const bool midpoint = scheme == Scheme::implicit_midpoint;
  const auto stencil = midpoint ? TimeStencil::half_levels : TimeStencil::central;
  const auto h = midpoint ? midpoint_history(previous, current, next, model.fluid)
                          : History<ThermoFieldState>{from_canonical(previous, model.fluid),
                                                      from_canonical(current, model.fluid),
                                                      from_canonical(next, model.fluid), dt};
  if (model.thermal) {
    row.norm_el_residual = thermo_field_residual(h, *model.thermal, stencil).max_conservative(skip);
    row.norm_noether = noether4_residual(h, *model.thermal, stencil).max_residual(skip);
    row.norm_entropy_residual = entropy_residual(h, *model.thermal, stencil).max_divergence(skip);
  } else {
    const History<EulerFieldState> e{{g, h.previous.y}, {g, h.current.y}, {g, h.next.y}, h.dt};
    row.norm_el_residual = max_norm(field_residual(e, *model.barotropic, stencil), skip);
    row.norm_noether = noether_residual(e, *model.barotropic, stencil).max_residual(skip);
  }

  // V y_x is one node by node; its spatial derivative is the 1D divergence identity.
  const auto y_x = derivative(g, current.y, current.y_jump);
  std::vector<double> Vy(g.n);
  for (int i = 0; i < g.n; ++i) Vy[i] = (1.0 / y_x[i]) * y_x[i];
  row.norm_dVy = max_norm(derivative(g, Vy), skip);

  const auto obs = recover_observables(current, model.fluid);
  row.min_T = model.thermal ? *std::min_element(obs.T.begin(), obs.T.end()) : 0.0;
  const auto tot = totals(current, model.fluid);
  row.energy_total = tot.H_D;
  row.momentum_total = tot.momentum;
  row.mass_total = tot.mass;
  row.entropy_total = tot.entropy;
  row.H_D = tot.H_D;
  row.F_D = neumann_hamiltonian(current, model.fluid);
  return row;
}

std::string snapshot_json(const CanonicalState& cs, const ScenarioModel& model, int step) {
  nlohmann::json j;
  j["step"] = step;
  j["time"] = cs.time;
  j["grid"] = {{"n", cs.grid.n},
               {"h", cs.grid.h},
               {"origin", cs.grid.origin},
               {"boundary", cs.grid.is_periodic() ? "periodic" : "dirichlet"}};
  j["tau"] = cs.tau;
  j["y"] = cs.y;
  j["pi0"] = cs.pi0;
  j["pi1"] = cs.pi1;
  j["tau_jump"] = cs.tau_jump;
  j["y_jump"] = cs.y_jump;
  if (cs.control) {
    const auto& c = *cs.control;
    j["control"] = {{"tau_left", c.tau_left}, {"tau_right", c.tau_right}, {"T_left", c.T_left},
                    {"T_right", c.T_right},   {"y_left", c.y_left},       {"y_right", c.y_right},
                    {"t0", c.t0}};
  }
  try {
    const auto obs = recover_observables(cs, model.fluid);
    j["observables"] = {{"rho", obs.rho}, {"v", obs.v}, {"s", obs.s}, {"T", obs.T}};
  } catch (const std::exception& e) {
    j["observables_error"] = e.what();
  }
  return j.dump();
}

CanonicalState load_snapshot(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot read snapshot '" + path + "'");
  const auto j = nlohmann::json::parse(f);
  CanonicalState cs;
  const auto& g = j.at("grid");
  cs.grid.n = g.at("n").get<int>();
  cs.grid.h = g.at("h").get<double>();
  cs.grid.origin = g.at("origin").get<double>();
  cs.grid.boundary = g.at("boundary").get<std::string>() == "periodic" ? Boundary::periodic : Boundary::dirichlet;
  cs.time = j.at("time").get<double>();
  cs.tau = j.at("tau").get<std::vector<double>>();
  cs.y = j.at("y").get<std::vector<double>>();
  cs.pi0 = j.at("pi0").get<std::vector<double>>();
  cs.pi1 = j.at("pi1").get<std::vector<double>>();
  cs.tau_jump = j.at("tau_jump").get<double>();
  cs.y_jump = j.at("y_jump").get<double>();
  if (j.contains("control")) {
    const auto& c = j["control"];
    cs.control = DirichletControl{c.at("tau_left").get<double>(), c.at("tau_right").get<double>(),
                                  c.at("T_left").get<double>(),   c.at("T_right").get<double>(),
                                  c.at("y_left").get<double>(),   c.at("y_right").get<double>(),
                                  c.at("t0").get<double>()};
  }
  return cs;
}

namespace {

void write_snapshot(const std::string& path, const std::string& text) {
  if (path.empty()) return;
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::trunc);
    f << text << '\n';
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace

RunOutput run_scenario(const ScenarioConfig& cfg, const RunPaths& paths, std::ostream& log) {
  RunOutput out;
  out.csv_path = paths.csv;
  out.json_path = paths.json;
  std::ofstream csv;
  if (!paths.csv.empty()) {
    csv.open(paths.csv, std::ios::trunc);
    if (!csv) {
      out.exit_code = 1;
      out.message = "cannot open CSV output '" + paths.csv + "'";
      return out;
    }
    csv << kDiagnosticsHeader << '\n' << std::flush;
  }

  StepOptions opts;
  opts.tolerance = cfg.tolerances.implicit_stage;
  opts.max_iterations = cfg.tolerances.max_iterations;
  opts.cfl_guard = cfg.tolerances.cfl_guard;
  const double dt = cfg.run.dt;
  const Scheme scheme = cfg.run.scheme;

  std::optional<ScenarioModel> model;
  std::optional<CanonicalState> last_valid;
  int k = 0;
  try {
    model = build_model(cfg);
    CanonicalState current = initial_state(cfg, *model);
    last_valid = current;
    CanonicalState previous = step(current, model->fluid, -dt, scheme, opts);
    for (k = 0; k <= cfg.run.steps; ++k) {
      CanonicalState next = step(current, model->fluid, dt, scheme, opts);
      if (k % cfg.run.snapshot_every == 0 || k == cfg.run.steps) {
        const auto row = diagnostics_row(previous, current, next, *model, dt, scheme);
        if (csv.is_open()) csv << format_row(row) << '\n' << std::flush;
        write_snapshot(paths.json, snapshot_json(current, *model, k));
      }
      out.steps_completed = k;
      if (k == cfg.run.steps) break;
      previous = std::move(current);
      current = std::move(next);
      last_valid = current;
    }
  } catch (const ConfigError& e) {
    out.exit_code = 1;
    out.message = e.what();
  } catch (const std::exception& e) {
    // Folding, lost temperature positivity, stalled implicit stage or CFL guard.
    out.exit_code = 2;
    out.message = e.what();
    if (model && last_valid) write_snapshot(paths.json, snapshot_json(*last_valid, *model, k));
  }
  if (out.exit_code != 0) log << out.message << '\n';
  return out;
}

}  // namespace fieldflow
