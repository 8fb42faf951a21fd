#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "fieldflow/config.hpp"
#include "fieldflow/errors.hpp"
#include "fieldflow/microkinetic.hpp"
#include "fieldflow/scenario.hpp"
#include "fieldflow/suites.hpp"

using namespace fieldflow;

namespace {

ScenarioConfig config_or_default(const std::string& path, bool bracket_defaults) {
  ScenarioConfig cfg;
  if (!path.empty()) {
    cfg = load_config(path);
  } else if (bracket_defaults) {
    cfg.grid.n = 64;
    cfg.initial.profile = Profile::sound_wave;
    cfg.initial.amplitude = 0.05;
  }
  apply_environment(cfg);
  return cfg;
}

int report_exit(const DiagnosticReport& r) {
  std::cout << r.to_csv();
  return r.passed() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fieldflow: variational fluid fields, canonical dynamics and identity diagnostics"};
  app.require_subcommand(0, 1);

  std::string config_path, csv_path, json_path;
  auto* simulate = app.add_subcommand("simulate", "integrate a scenario and write CSV diagnostics");
  simulate->add_option("config", config_path, "scenario file")->required()->check(CLI::ExistingFile);
  simulate->add_option("--csv", csv_path, "diagnostics CSV (default <config>.csv)");
  simulate->add_option("--json", json_path, "final-state JSON snapshot (default <config>.json)");

  std::string picture = "euler";
  SuiteOptions suite;
  std::optional<std::uint64_t> suite_seed;
  auto* identities = app.add_subcommand("identities", "off-shell identity and picture-transform residuals");
  identities->add_option("--picture", picture, "lagrange|euler|thermo|complete-lagrange")
      ->check(CLI::IsMember({"lagrange", "euler", "thermo", "complete-lagrange"}));
  identities->add_option("--config", config_path, "scenario file supplying EOS and material constants");
  identities->add_option("--n", suite.n, "grid size for finite-difference and transform checks")
      ->check(CLI::Range(8, 1 << 20));
  identities->add_option("--states", suite.states, "random manufactured states")->check(CLI::PositiveNumber);
  identities->add_option("--seed", suite_seed, "RNG seed");

  std::optional<std::uint64_t> bracket_seed;
  auto* brackets = app.add_subcommand("brackets", "canonical bracket suite and reduced-bracket audit");
  brackets->add_option("--config", config_path, "scenario file (default: periodic ideal-gas sound wave, n = 64)");
  brackets->add_option("--seed", bracket_seed, "RNG seed for the test windows");

  KineticParameters kin;
  std::optional<std::uint64_t> micro_seed;
  auto* micro = app.add_subcommand("micro", "Monte Carlo proper-time thermometer");
  micro->add_option("--T", kin.T, "temperature")->check(CLI::NonNegativeNumber);
  micro->add_option("--m", kin.m, "particle mass")->check(CLI::PositiveNumber);
  micro->add_option("--c", kin.c, "light speed")->check(CLI::PositiveNumber);
  micro->add_option("--k", kin.k, "Boltzmann constant")->check(CLI::PositiveNumber);
  micro->add_option("--N", kin.N, "ensemble size")->check(CLI::PositiveNumber);
  micro->add_option("--seed", micro_seed, "RNG seed");

  auto* eos = app.add_subcommand("eos-check", "fundamental-equation audit of the configured EOS");
  eos->add_option("--config", config_path, "scenario file (default: ideal gas)");

  if (argc < 2) {
    std::cerr << app.help();
    return 1;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return 1;
  }
  if (app.get_subcommands().empty()) {
    std::cerr << app.help();
    return 1;
  }

  try {
    if (*simulate) {
      auto cfg = load_config(config_path);
      apply_environment(cfg);
      const auto stem = std::filesystem::path(config_path).stem().string();
      RunPaths paths{csv_path.empty() ? stem + ".csv" : csv_path, json_path.empty() ? stem + ".json" : json_path};
      const auto out = run_scenario(cfg, paths, std::cerr);
      if (out.exit_code == 0) {
        std::cerr << "completed " << out.steps_completed << " steps; wrote " << out.csv_path << " and "
                  << out.json_path << '\n';
      }
      return out.exit_code;
    }
    if (*identities) {
      const auto cfg = config_or_default(config_path, false);
      suite.seed = suite_seed.value_or(cfg.run.seed);
      const IdentityPicture p = picture == "lagrange" ? IdentityPicture::lagrange
                                : picture == "euler"  ? IdentityPicture::euler
                                : picture == "thermo" ? IdentityPicture::thermo
                                                      : IdentityPicture::complete_lagrange;
      suite.transform_tolerance = cfg.tolerances.picture_transform;
      suite.rest_frame_tolerance = cfg.tolerances.rest_frame;
      suite.reduction_tolerance = cfg.tolerances.rest_frame_reduction;
      return report_exit(identity_suite(p, cfg, suite));
    }
    if (*brackets) {
      const auto cfg = config_or_default(config_path, true);
      const auto model = build_model(cfg);
      const auto cs = initial_state(cfg, model);
      const auto seed = bracket_seed.value_or(cfg.run.seed);
      const auto result = bracket_suite(cs, model.fluid, seed, cfg.tolerances.bracket);
      const auto derivatives =
          functional_derivative_check(cs, model.fluid, 100, seed, cfg.tolerances.functional_derivative);
      std::cout << result.report.to_csv() << '\n' << derivatives.to_csv() << '\n' << audit_csv(result.audit);
      return result.report.passed() && derivatives.passed() ? 0 : 2;
    }
    if (*micro) {
      if (micro_seed) {
        kin.seed = *micro_seed;
      } else {
        ScenarioConfig cfg;
        apply_environment(cfg);
        kin.seed = cfg.run.seed;
      }
      std::cout << kMicroHeader << '\n' << micro_csv_line(kin) << '\n';
      return 0;
    }
    if (*eos) {
      return report_exit(eos_check(config_or_default(config_path, false)));
    }
  } catch (const ConfigError& e) {
    for (const auto& msg : e.errors()) std::cerr << msg << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return 2;
  }
  return 1;
}
