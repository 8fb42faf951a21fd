#include "fieldflow/microkinetic.hpp"

#include <cmath>
#include <random>
#include <string>

#include "fieldflow/errors.hpp"

namespace fieldflow {

void check_kinetic_validity(const KineticParameters& params) {
  if (!(params.T >= 0.0) || !(params.m > 0.0) || !(params.c > 0.0) || !(params.k > 0.0)) {
    throw DomainError("kinetic parameters need T >= 0 and positive m, c, k");
  }
  if (params.N == 0) throw DomainError("ensemble size N must be positive");
  const double thermal = std::sqrt(3.0 * params.k * params.T / params.m);
  if (thermal >= kThermalSpeedLimit * params.c) {
    throw DomainError("thermal speed sqrt(3kT/m) = " + std::to_string(thermal) + " is not small against c");
  }
}

namespace {

std::vector<double> sample(const KineticParameters& params, std::size_t* rejected) {
  check_kinetic_validity(params);
  if (params.T == 0.0) {
    if (rejected) *rejected = 0;
    return std::vector<double>(params.N, 0.0);
  }
  std::mt19937_64 rng(params.seed);
  std::normal_distribution<double> component(0.0, std::sqrt(params.k * params.T / params.m));
  std::vector<double> speeds;
  speeds.reserve(params.N);
  std::size_t dropped = 0;
  while (speeds.size() < params.N) {
    const double a = component(rng), b = component(rng), c = component(rng);
    const double speed = std::sqrt(a * a + b * b + c * c);
    if (speed >= params.c) {
      ++dropped;
      continue;
    }
    speeds.push_back(speed);
  }
  if (rejected) *rejected = dropped;
  return speeds;
}

}  // namespace

std::vector<double> sample_ensemble(const KineticParameters& params) { return sample(params, nullptr); }

double retardation_rate(const std::vector<double>& speeds, double c) {
  if (speeds.empty()) throw DomainError("empty ensemble");
  double sum = 0.0;
  for (const double v : speeds) {
    const double x = v * v / (c * c);
    if (x >= 1.0) throw DomainError("particle speed reaches c");
    sum += x / (1.0 + std::sqrt(1.0 - x));
  }
  return sum / static_cast<double>(speeds.size());
}

double recover_temperature(double rate, const KineticParameters& params) {
  if (!(rate >= 0.0)) throw DomainError("retardation rate must be non-negative");
  return 2.0 * params.m * params.c * params.c / (3.0 * params.k) * rate;
}

double radium_lifetime_factor(const std::vector<double>& speeds, double c) {
  if (speeds.empty()) throw DomainError("empty ensemble");
  double sum = 0.0;
  for (const double v : speeds) {
    const double x = v * v / (c * c);
    if (x >= 1.0) throw DomainError("particle speed reaches c");
    sum += 1.0 / std::sqrt(1.0 - x);
  }
  return sum / static_cast<double>(speeds.size());
}

KineticRun run_kinetic(const KineticParameters& params) {
  KineticRun r;
  const auto speeds = sample(params, &r.rejected);
  r.rate = retardation_rate(speeds, params.c);
  r.recovered_T = recover_temperature(r.rate, params);
  r.lifetime_factor = radium_lifetime_factor(speeds, params.c);
  return r;
}

}  // namespace fieldflow
