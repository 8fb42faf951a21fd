#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fieldflow/barotropic.hpp"
#include "fieldflow/complete_lagrange.hpp"
#include "fieldflow/config.hpp"
#include "fieldflow/diagnostics.hpp"
#include "fieldflow/hamiltonian.hpp"
#include "fieldflow/microkinetic.hpp"
#include "fieldflow/poisson.hpp"
#include "fieldflow/thermo_euler.hpp"

namespace fieldflow {

enum class IdentityPicture { lagrange, euler, thermo, complete_lagrange };

struct SuiteOptions {
  int n = 128;           // grid for the finite-difference and transform checks
  int states = 20;       // random manufactured states
  int points = 10;       // sample points per state
  std::uint64_t seed = 0;
  double analytic_tolerance = 1e-10;
  double transform_tolerance = kPictureTransformTolerance;
  double rest_frame_tolerance = kRestFrameTolerance;
  double reduction_tolerance = 1e-6;
};

/// Analytic identity maxima over random manufactured states (judged), finite
/// difference residuals on an n-node grid (reported), picture transformation
/// and rest-frame checks (judged).
DiagnosticReport lagrange_identities(const BarotropicFluid& fluid, const SuiteOptions& opt);
DiagnosticReport euler_identities(const BarotropicFluid& fluid, const SuiteOptions& opt);
DiagnosticReport thermo_identities(const ThermalFluid& fluid, const SuiteOptions& opt);
/// Also runs the canonical inversion round trip on opt.states * 5 random states.
DiagnosticReport complete_lagrange_identities(const CompleteLagrangeFluid& fluid, const SuiteOptions& opt);

/// Fluids for the identity suites. Barotropic pictures fall back to the
/// polytrope K = 1, gamma = 2 and thermal pictures to the ideal gas when the
/// configured EOS is of the other family.
BarotropicFluid suite_barotropic_fluid(const ScenarioConfig& cfg);
ThermalFluid suite_thermal_fluid(const ScenarioConfig& cfg);
CompleteLagrangeFluid suite_complete_lagrange_fluid(const ScenarioConfig& cfg);

DiagnosticReport identity_suite(IdentityPicture picture, const ScenarioConfig& cfg, const SuiteOptions& opt);

/// Smooth window on the grid; on Dirichlet grids it vanishes on the three end nodes.
std::vector<double> smooth_window(const Grid1D& grid, double center, double width, double phase);

/// Analytic variational derivatives of H_D against node perturbation at
/// `count` random nodes per field.
DiagnosticReport functional_derivative_check(const CanonicalState& cs, const CanonicalFluid& fluid, int count,
                                             std::uint64_t seed, double tolerance = 1e-6);

inline constexpr double kAntisymmetryTolerance = 1e-14;
inline constexpr double kBilinearityTolerance = 1e-12;
inline constexpr double kJacobiTolerance = 1e-10;
inline constexpr double kGaugeTolerance = 1e-10;

struct BracketSuite {
  DiagnosticReport report;
  std::vector<BracketAuditRow> audit;
};

/// Canonical {S, R}, {P, R} against its discrete closed form, antisymmetry,
/// bilinearity, Jacobi and gauge invariance, plus the reduced-bracket audit.
/// `tolerance` judges {S, R} and {P, R}; the structural checks use the
/// tighter of it and their own constants.
BracketSuite bracket_suite(const CanonicalState& cs, const CanonicalFluid& fluid, std::uint64_t seed,
                           double tolerance = 1e-8);

/// "T_in,rate,T_hat,rel_err,lifetime_factor" for one ensemble.
inline constexpr const char* kMicroHeader = "T_in,rate,T_hat,rel_err,lifetime_factor";
std::string micro_csv_line(const KineticParameters& params);

/// Fundamental-equation audit of the configured EOS on a grid of states.
DiagnosticReport eos_check(const ScenarioConfig& cfg);

}  // namespace fieldflow
