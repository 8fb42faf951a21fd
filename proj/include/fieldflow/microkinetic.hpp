#pragma once

#include <cstdint>
#include <vector>

#include "fieldflow/diagnostics.hpp"

namespace fieldflow {

struct KineticParameters {
  double T = 1.0;      // temperature
  double m = 1.0;      // particle mass
  double c = 100.0;    // light speed
  double k = 1.0;      // Boltzmann constant
  std::size_t N = 100000;
  std::uint64_t seed = 0;
};

/// Nonrelativistic speed bound: sqrt(3kT/m) must stay below this fraction of c.
inline constexpr double kThermalSpeedLimit = 0.3;

/// Throws DomainError unless the thermal speed is a small fraction of c.
void check_kinetic_validity(const KineticParameters& params);

/// Speeds |v| of N particles with Maxwell velocity components of variance
/// kT/m. Draws at or above c are rejected and redrawn.
std::vector<double> sample_ensemble(const KineticParameters& params);

/// Ensemble mean of 1 - sqrt(1 - v^2/c^2), evaluated as x / (1 + sqrt(1 - x)).
double retardation_rate(const std::vector<double>& speeds, double c);

/// T = (2 m c^2 / 3 k) * rate.
double recover_temperature(double rate, const KineticParameters& params);

/// Ensemble mean of the Lorentz factor.
double radium_lifetime_factor(const std::vector<double>& speeds, double c);

struct KineticRun {
  double rate = 0.0;
  double recovered_T = 0.0;
  double lifetime_factor = 0.0;
  std::size_t rejected = 0;
};

KineticRun run_kinetic(const KineticParameters& params);

}  // namespace fieldflow
