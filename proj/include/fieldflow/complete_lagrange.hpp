#pragma once

#include <array>
#include <vector>

#include "fieldflow/barotropic.hpp"
#include "fieldflow/diagnostics.hpp"
#include "fieldflow/eos.hpp"
#include "fieldflow/thermo_euler.hpp"

namespace fieldflow {

/// Constitutive data for the entropy picture: f(V, T) for the Lagrangian and
/// s(e, V) for the canonical inversion. The temperature T = 1 / t_tau fixes
/// beta = 1.
struct CompleteLagrangeFluid {
  ThermalEos eos;
  EntropyForm entropy;
  MaterialConstants constants;

  static CompleteLagrangeFluid ideal_gas(double R = 1.0, double c_V = 1.5, double V0 = 1.0, double T0 = 1.0,
                                         MaterialConstants constants = {});
  /// Throws std::invalid_argument unless beta == 1.
  void validate() const;
};

/// Derivatives x^mu_alpha of physical time t and position x with respect to
/// material time tau and label y.
struct SpacetimeJacobian {
  double t_tau = 1.0, t_y = 0.0, x_tau = 0.0, x_y = 1.0;
};

struct ChiW {
  double chi = 1.0;  // det of the spatial block x^k_a
  double w = 0.0;    // w_k = (spatial block)^-1 x^0_a
};

struct ClKinematics {
  double T = 0.0, V = 0.0, v = 0.0;
  double det = 0.0;
};

/// T = 1 / t_tau, V = det / t_tau, v = x_tau / t_tau. Throws
/// ConfigurationError unless t_tau > 0 and the spatial block is positive.
ClKinematics kinematics_cl(const SpacetimeJacobian& X);
ChiW chi_w(const SpacetimeJacobian& X);

struct ClPoint {
  ClKinematics k;
  ChiW cw;
  double f = 0.0, s = 0.0, p = 0.0, e = 0.0;
  double L = 0.0;
  Tensor2<double> Z{};  // z^alpha_mu, inverse of x^mu_alpha
  Tensor2<double> P{};  // P^alpha_mu (alpha material, mu spacetime)
  Tensor2<double> T{};  // energy-momentum T^alpha_beta (table form)
};

/// Lagrangian t_tau (M v^2 / 2 - f(V, T)), momenta and the entropy-density tensor.
ClPoint cl_point(const SpacetimeJacobian& X, const CompleteLagrangeFluid& fluid);

/// T^alpha_beta = P^alpha_mu x^mu_beta - delta L.
Tensor2<double> cl_contraction(const ClPoint& pt, const SpacetimeJacobian& X);

/// Canonical momenta conjugate to (t, x) under tau evolution: Pi_mu = P^0_mu.
struct CanonicalPi {
  double Pi0 = 0.0;
  double Pi1 = 0.0;
};
CanonicalPi canonical_pi(const ClPoint& pt);

struct Inversion {
  double e = 0.0, V = 0.0, p = 0.0, T = 0.0, s = 0.0;
  double hamiltonian = 0.0;  // -s
  int iterations = 0;
  std::array<double, 2> residual{};
};

inline constexpr double kInversionTolerance = 1e-12;
inline constexpr int kInversionMaxIterations = 50;

/// Solves M V = chi (M - w Pi1 - p chi w^2) and -e = Pi0 + Pi1^2/2M - p^2 w^2 chi^2 / 2M
/// for (e, V) by damped Newton from the rest-frame closed form
/// (V = chi, e = -Pi0 - Pi1^2 / 2M). Throws ConvergenceError or DomainError.
Inversion invert_canonical(const CanonicalPi& pi, const ChiW& cw, const CompleteLagrangeFluid& fluid,
                           double tolerance = kInversionTolerance, int max_iterations = kInversionMaxIterations);

/// Per-point identity residuals: det = V/T, (x^k_a - v x^0_a) y^a_k = 1 with
/// y the inverse of the spatial block of z, V = chi (1 - w v), T^a_0 = 0,
/// table minus contraction.
DiagnosticReport cl_identities(const SpacetimeJacobian& X, const CompleteLagrangeFluid& fluid,
                               double tolerance = 1e-12);

/// Complete Lagrange data on a uniform material grid at one physical time.
struct CompleteLagrangeState {
  Grid1D grid;
  std::vector<double> tau, t, x;
  std::vector<SpacetimeJacobian> jacobian;
};

inline constexpr double kClProbe = 1e-5;
inline constexpr double kClReductionTolerance = 1e-6;

/// At v = 0 probes ds = de / T + (p / T) dV through the canonical inversion
/// with variations of Pi0 and chi. Throws std::invalid_argument when v != 0.
DiagnosticReport rest_frame_reduction_cl(const SpacetimeJacobian& X, const CompleteLagrangeFluid& fluid,
                                         double probe = kClProbe, double tolerance = kClReductionTolerance);
DiagnosticReport rest_frame_reduction_cl(const CompleteLagrangeState& state, const CompleteLagrangeFluid& fluid,
                                         double probe = kClProbe, double tolerance = kClReductionTolerance);

struct ClFromEuler {
  CompleteLagrangeState state;
  DiagnosticReport report;
};

/// Inverts (tau(t, x), y(t, x)) at time t of a thermal Euler snapshot to
/// x^mu(tau, y) on a material grid and compares (T, V, v) and the cross-picture
/// momentum relations at corresponding points. Periodic grids only.
ClFromEuler transform_from_euler(const ThermoFieldState& snapshot, double time, const CompleteLagrangeFluid& fluid,
                                 double tolerance = kPictureTransformTolerance);

}  // namespace fieldflow
