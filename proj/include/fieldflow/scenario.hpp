#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fieldflow/barotropic.hpp"
#include "fieldflow/config.hpp"
#include "fieldflow/hamiltonian.hpp"
#include "fieldflow/thermo_euler.hpp"

namespace fieldflow {

/// Fluid models built from a scenario. Exactly one of thermal / barotropic is set.
struct ScenarioModel {
  CanonicalFluid fluid;
  std::optional<ThermalFluid> thermal;
  std::optional<BarotropicFluid> barotropic;
};

ScenarioModel build_model(const ScenarioConfig& cfg);
Grid1D build_grid(const ScenarioConfig& cfg);

/// Node values of density, velocity and temperature (ignored for barotropic runs).
struct NodeProfile {
  std::vector<double> rho, v, T;
};

/// Reads a CSV table with header rho,v,T and one row per grid node.
NodeProfile load_profile_table(const std::string& path, int n);

/// Canonical state for the configured profile. Throws ConfigurationError when
/// the density is not positive (the label map would fold).
CanonicalState initial_state(const ScenarioConfig& cfg, const ScenarioModel& model);

/// One CSV diagnostics row.
struct DiagnosticsRow {
  double t = 0.0;
  double norm_el_residual = 0.0;
  double norm_noether = 0.0;
  double norm_dVy = 0.0;
  double energy_total = 0.0;
  double momentum_total = 0.0;
  double mass_total = 0.0;
  double entropy_total = 0.0;
  double norm_entropy_residual = 0.0;
  double min_T = 0.0;
  double H_D = 0.0;
  double F_D = 0.0;
};

inline constexpr const char* kDiagnosticsHeader =
    "t,norm_el_residual,norm_noether,norm_dVy,energy_total,momentum_total,mass_total,entropy_total,"
    "norm_entropy_residual,min_T,H_D,F_D";

std::string format_row(const DiagnosticsRow& row);

/// Residual norms at the middle of three consecutive canonical states. For
/// implicit-midpoint runs the half_levels stencil is used on the stage points.
DiagnosticsRow diagnostics_row(const CanonicalState& previous, const CanonicalState& current,
                               const CanonicalState& next, const ScenarioModel& model, double dt, Scheme scheme);

/// JSON snapshot of a canonical state with its recovered observables.
std::string snapshot_json(const CanonicalState& cs, const ScenarioModel& model, int step);
CanonicalState load_snapshot(const std::string& path);

struct RunPaths {
  std::string csv;
  std::string json;
};

struct RunOutput {
  int exit_code = 0;  // 0 success, 1 config error, 2 invariant violation
  std::string message;
  int steps_completed = 0;
  std::string csv_path;
  std::string json_path;
};

/// Integrates the scenario, writing one CSV row and rewriting the JSON
/// snapshot every `snapshot_every` steps. Errors during the run are reported
/// through the exit code after the last rows have been flushed.
RunOutput run_scenario(const ScenarioConfig& cfg, const RunPaths& paths, std::ostream& log);

}  // namespace fieldflow
