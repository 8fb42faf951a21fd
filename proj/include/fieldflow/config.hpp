#pragma once

#include <cstdint>
#include <string>

#include "fieldflow/grid.hpp"
#include "fieldflow/hamiltonian.hpp"

namespace fieldflow {

enum class EosKind { polytrope, ideal_gas, entropy_table };
enum class Profile { rest, sound_wave, thermal_bath, custom };

struct GridSection {
  int n = 128;
  double length = 1.0;
  Boundary boundary = Boundary::periodic;
};

struct EosSection {
  EosKind kind = EosKind::ideal_gas;
  double K = 1.0;      // polytrope
  double gamma = 2.0;  // polytrope
  double R = 1.0;      // ideal gas / entropy table
  double c_v = 1.5;
  double V0 = 1.0;
  double T0 = 1.0;
};

struct MaterialSection {
  double M = 1.0;
  double beta = 1.0;
};

struct InitialSection {
  Profile profile = Profile::rest;
  double amplitude = 1e-3;  // relative density perturbation
  int wavenumber = 1;       // wavelengths per domain length
  double rho0 = 1.0;
  double T0 = 1.0;
  double T_left = 1.0;
  double T_right = 1.0;
  std::string table;  // CSV path with columns rho,v,T (one row per node)
};

struct RunSection {
  double dt = 1e-3;
  int steps = 100;
  Scheme scheme = Scheme::implicit_midpoint;
  int snapshot_every = 1;
  std::uint64_t seed = 0;
};

struct ToleranceSection {
  double implicit_stage = 1e-12;
  int max_iterations = 50;
  bool cfl_guard = true;
  double fundamental_audit = 1e-7;
  double picture_transform = 1e-8;
  double rest_frame = 1e-12;
  double rest_frame_reduction = 1e-6;
  double functional_derivative = 1e-6;
  double bracket = 1e-8;
  double inversion = 1e-12;
};

struct ScenarioConfig {
  GridSection grid;
  EosSection eos;
  MaterialSection material;
  InitialSection initial;
  RunSection run;
  ToleranceSection tolerances;

  bool thermal() const { return eos.kind != EosKind::polytrope; }
};

/// Parses `[section]` headers and `key = value` lines (`#` and `;` start
/// comments). Sections grid, eos, initial and run are required; material and
/// tolerances are optional; `boundary` may also be given under [run]. Throws
/// ConfigError listing every problem.
ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config(const std::string& path);

/// FIELDFLOW_SEED, when set, replaces run.seed.
void apply_environment(ScenarioConfig& cfg);

const char* to_string(EosKind kind);
const char* to_string(Profile profile);
const char* to_string(Scheme scheme);

}  // namespace fieldflow
