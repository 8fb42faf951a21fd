#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "fieldflow/scenario.hpp"

using namespace fieldflow;

namespace {

namespace fs = std::filesystem;

std::string scenario(const std::string& name) { return std::string(FIELDFLOW_SCENARIOS) + "/" + name; }

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream f(path);
  std::vector<std::string> lines;
  for (std::string l; std::getline(f, l);) lines.push_back(l);
  return lines;
}

std::vector<double> split(const std::string& row) {
  std::vector<double> v;
  std::stringstream ss(row);
  for (std::string cell; std::getline(ss, cell, ',');) v.push_back(std::stod(cell));
  return v;
}

ScenarioConfig wave_config(EosKind kind) {
  ScenarioConfig c;
  c.grid.n = 64;
  c.eos.kind = kind;
  c.initial.profile = Profile::sound_wave;
  c.initial.amplitude = 1e-2;
  c.run.steps = 10;
  return c;
}

}  // namespace

TEST_CASE("models for each EOS kind") {
  ScenarioConfig c;
  c.eos.kind = EosKind::polytrope;
  auto m = build_model(c);
  CHECK(m.barotropic.has_value());
  CHECK_FALSE(m.thermal.has_value());
  c.eos.kind = EosKind::entropy_table;
  m = build_model(c);
  REQUIRE(m.thermal.has_value());
  // The entropy-form gas carries the same Helmholtz function as the ideal gas.
  const auto ideal = ThermalEos::ideal_gas();
  CHECK(m.thermal->eos.at(1.3, 0.7).f == doctest::Approx(ideal.at(1.3, 0.7).f).epsilon(1e-10));
}

TEST_CASE("sound-wave initial data") {
  for (auto kind : {EosKind::polytrope, EosKind::ideal_gas}) {
    const auto cfg = wave_config(kind);
    const auto model = build_model(cfg);
    const auto cs = initial_state(cfg, model);
    const auto obs = recover_observables(cs, model.fluid);
    const double c = kind == EosKind::polytrope ? std::sqrt(2.0) : std::sqrt(5.0 / 3.0);
    for (int i = 0; i < cfg.grid.n; ++i) {
      const double wave = 1e-2 * std::cos(2.0 * std::numbers::pi * cs.grid.x(i));
      // Discrete label gradient of rho0 (x + A sin(kx) / k): second-order accurate.
      CHECK(obs.rho[i] == doctest::Approx(1.0 + wave).epsilon(1e-4));
      CHECK(std::abs(obs.v[i] - c * wave) < 1e-12);
    }
    if (kind == EosKind::ideal_gas) {
      // Isentropic: s is uniform.
      for (double s : obs.s) CHECK(s == doctest::Approx(obs.s.front()).epsilon(1e-12));
    }
  }
}

TEST_CASE("custom profile table") {
  const fs::path table = fs::temp_directory_path() / "fieldflow_profile.csv";
  {
    std::ofstream f(table);
    f << "rho,v,T\n";
    for (int i = 0; i < 16; ++i) f << 1.0 + 0.1 * std::sin(2.0 * std::numbers::pi * i / 16.0) << ",0.0," << 1.0 + 0.01 * i << "\n";
  }
  ScenarioConfig cfg;
  cfg.grid.n = 16;
  cfg.initial.profile = Profile::custom;
  cfg.initial.table = table.string();
  const auto model = build_model(cfg);
  const auto cs = initial_state(cfg, model);
  const auto obs = recover_observables(cs, model.fluid);
  CHECK(obs.T[5] == doctest::Approx(1.05).epsilon(1e-12));
  CHECK_THROWS_AS(load_profile_table(table.string(), 17), ConfigError);
  {
    std::ofstream f(table);
    f << "rho,v\n1,0\n";
  }
  CHECK_THROWS_AS(load_profile_table(table.string(), 1), ConfigError);
  fs::remove(table);
}

TEST_CASE("rest scenario stays at rest with vanishing residuals") {
  const auto cfg = load_config(scenario("rest.ini"));
  const fs::path dir = fs::temp_directory_path() / "fieldflow_rest";
  fs::create_directories(dir);
  std::ostringstream log;
  const auto out = run_scenario(cfg, {(dir / "rest.csv").string(), (dir / "rest.json").string()}, log);
  CHECK(out.exit_code == 0);
  CHECK(out.steps_completed == cfg.run.steps);
  const auto lines = read_lines((dir / "rest.csv").string());
  REQUIRE(lines.size() >= 2);
  CHECK(lines.front() == kDiagnosticsHeader);
  const auto first = split(lines[1]);
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const auto row = split(lines[r]);
    REQUIRE(row.size() == 12);
    CHECK(row[1] <= 1e-12);  // norm_el_residual
    CHECK(row[2] <= 1e-12);  // norm_noether
    CHECK(row[8] <= 1e-12);  // norm_entropy_residual
    CHECK(row[4] == doctest::Approx(first[4]).epsilon(1e-14));
  }
  const auto snap = load_snapshot((dir / "rest.json").string());
  CHECK(snap.grid.n == cfg.grid.n);
  CHECK(snap.time == doctest::Approx(cfg.run.steps * cfg.run.dt));
  fs::remove_all(dir);
}

TEST_CASE("runs are reproducible byte for byte") {
  auto cfg = wave_config(EosKind::ideal_gas);
  const fs::path dir = fs::temp_directory_path() / "fieldflow_repro";
  fs::create_directories(dir);
  std::ostringstream log;
  run_scenario(cfg, {(dir / "a.csv").string(), (dir / "a.json").string()}, log);
  run_scenario(cfg, {(dir / "b.csv").string(), (dir / "b.json").string()}, log);
  CHECK(read_lines((dir / "a.csv").string()) == read_lines((dir / "b.csv").string()));
  CHECK(read_lines((dir / "a.json").string()) == read_lines((dir / "b.json").string()));
  fs::remove_all(dir);
}

TEST_CASE("a folding initial state exits with code 2") {
  const auto cfg = load_config(scenario("fold.ini"));
  std::ostringstream log;
  const fs::path dir = fs::temp_directory_path() / "fieldflow_fold";
  fs::create_directories(dir);
  const auto out = run_scenario(cfg, {(dir / "fold.csv").string(), (dir / "fold.json").string()}, log);
  CHECK(out.exit_code == 2);
  CHECK(log.str().find("fold") != std::string::npos);
  CHECK(read_lines((dir / "fold.csv").string()).front() == kDiagnosticsHeader);
  fs::remove_all(dir);
}

TEST_CASE("a run that blows up mid-way leaves a loadable snapshot") {
  auto cfg = wave_config(EosKind::ideal_gas);
  cfg.initial.amplitude = 0.2;
  cfg.run.scheme = Scheme::rk4;
  cfg.run.dt = 0.06;  // beyond the RK4 stability limit of the central difference
  cfg.run.steps = 2000;
  cfg.tolerances.cfl_guard = false;
  const fs::path dir = fs::temp_directory_path() / "fieldflow_blowup";
  fs::create_directories(dir);
  std::ostringstream log;
  const auto out = run_scenario(cfg, {(dir / "b.csv").string(), (dir / "b.json").string()}, log);
  CHECK(out.exit_code == 2);
  CHECK(out.steps_completed > 0);
  CHECK(out.steps_completed < cfg.run.steps);
  const auto snap = load_snapshot((dir / "b.json").string());
  CHECK(snap.grid.n == cfg.grid.n);
  CHECK(read_lines((dir / "b.csv").string()).size() >= 2);
  fs::remove_all(dir);
}

TEST_CASE("CFL guard violation is an invariant failure") {
  auto cfg = wave_config(EosKind::polytrope);
  cfg.run.dt = 0.5;
  std::ostringstream log;
  const auto out = run_scenario(cfg, {"", ""}, log);
  CHECK(out.exit_code == 2);
  CHECK(log.str().find("CFL") != std::string::npos);
}
