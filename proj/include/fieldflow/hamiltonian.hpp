#pragma once

#include <optional>
#include <vector>

#include "fieldflow/barotropic.hpp"
#include "fieldflow/diagnostics.hpp"
#include "fieldflow/eos.hpp"
#include "fieldflow/grid.hpp"
#include "fieldflow/thermo_euler.hpp"

namespace fieldflow {

/// Constitutive data of the canonical dynamics: e(V, s) plus material constants.
struct CanonicalFluid {
  CaloricModel model;
  MaterialConstants constants;

  static CanonicalFluid from(const ThermalFluid& fluid) { return {CaloricModel(fluid.eos), fluid.constants}; }
  static CanonicalFluid from(const BarotropicFluid& fluid) { return {CaloricModel(fluid.eos), fluid.constants}; }
};

/// Thermal-bath control on a Dirichlet grid: y is pinned at both ends and the
/// material time advances at the boundary temperature, tau_b(t) = tau_b(t0) +
/// T_b (t - t0) / beta.
struct DirichletControl {
  double tau_left = 0.0;
  double tau_right = 0.0;
  double T_left = 1.0;
  double T_right = 1.0;
  double y_left = 0.0;
  double y_right = 0.0;
  double t0 = 0.0;

  double tau_at_left(double t, double beta) const { return tau_left + T_left * (t - t0) / beta; }
  double tau_at_right(double t, double beta) const { return tau_right + T_right * (t - t0) / beta; }
};

/// Phase-space point: fields z = (tau, y) and conjugate momenta (pi0, pi1).
struct CanonicalState {
  Grid1D grid;
  std::vector<double> tau, y, pi0, pi1;
  double tau_jump = 0.0;
  double y_jump = 0.0;
  double time = 0.0;
  std::optional<DirichletControl> control;  // required on Dirichlet grids
};

struct HamiltonianPoint {
  double rho = 0.0, V = 0.0, s = 0.0, v = 0.0;
  double e = 0.0, T = 0.0, p = 0.0, f = 0.0;
  double H = 0.0;
  double dH_dpi0 = 0.0, dH_dpi1 = 0.0;  // rates of tau and y
  double dH_dtau_x = 0.0, dH_dy_x = 0.0;  // minus the spatial momenta Theta^1_alpha
};

/// H = rho (M v^2 / 2 + e(V, s)) with rho = y_x, s = pi0 / (beta rho),
/// M v = -(pi0 tau_x + pi1 y_x) / rho, and its partial derivatives.
HamiltonianPoint hamiltonian_point(double tau_x, double y_x, double pi0, double pi1, const CanonicalFluid& fluid);

/// pi_alpha = Theta^0_alpha of the thermal Euler picture.
CanonicalState to_canonical(const ThermoFieldState& state, const ThermalFluid& fluid, double time = 0.0);
/// Barotropic state: tau starts at zero and pi0 vanishes.
CanonicalState to_canonical(const EulerFieldState& state, const BarotropicFluid& fluid, double time = 0.0);

/// Field values with rates dH/dpi (the inverse Legendre map).
ThermoFieldState from_canonical(const CanonicalState& cs, const CanonicalFluid& fluid);

struct Observables {
  std::vector<double> rho, v, s, T, H, p, e;
};
/// Throws ConfigurationError for y_x <= 0 and DomainError for T <= 0 in a thermal model.
Observables recover_observables(const CanonicalState& cs, const CanonicalFluid& fluid);

/// Density and discrete variational derivatives dH_D/dz_j / w_j, dH_D/dpi_j / w_j
/// of the quadrature H_D = sum w_i H_i.
struct HamiltonianDensityEval {
  std::vector<double> H, dH_dz0, dH_dz1, dH_dpi0, dH_dpi1;
};
HamiltonianDensityEval evaluate_hamiltonian(const CanonicalState& cs, const CanonicalFluid& fluid);

/// (1/w_j) sum_i w_i g_i d(Dz)_i/dz_j: the grid variational derivative of
/// sum_i w_i G(Dz_i) with g = dG/dz_x, for the stencil of `derivative`.
/// On periodic grids this is -D g.
std::vector<double> variational_transpose(const Grid1D& grid, const std::vector<double>& g);

struct CanonicalRates {
  std::vector<double> tau, y, pi0, pi1;
};

/// zdot = dH/dpi, pidot = d_x(dH/dz_x) with the central stencil. On periodic
/// grids pidot equals -dH_D/dz exactly. On Dirichlet grids the boundary nodes
/// follow the control with zero momentum rates; `step` then resets boundary z
/// to the control data and boundary pi to the Legendre image of the pinned
/// motion (v = 0, T = T_b).
CanonicalRates hamilton_rhs(const CanonicalState& cs, const CanonicalFluid& fluid);

/// Compares the expanded closed-form rate expressions (zdot with a 1/rho
/// factor, pi0dot without rho) against hamilton_rhs. Values are reported, not
/// judged.
DiagnosticReport explicit_rates_audit(const CanonicalState& cs, const CanonicalFluid& fluid);

enum class Scheme { rk4, implicit_midpoint };

struct StepOptions {
  // Implicit stage: change in the rates relative to max(1, |rates|). Once the
  // iteration stops contracting, up to 100 times this is accepted as roundoff.
  double tolerance = 1e-12;
  int max_iterations = 50;
  bool cfl_guard = true;
};

struct StepStats {
  int iterations = 0;
  double last_change = 0.0;
};

/// Largest |dt| allowed by the guard h / (2 c_bound), c_bound = 2 max(|v| + c).
double max_stable_dt(const CanonicalState& cs, const CanonicalFluid& fluid);

/// One step of size dt (negative allowed, zero is the identity). Throws
/// std::invalid_argument when the CFL guard fails, ConvergenceError when the
/// implicit stage does not converge and ConfigurationError / DomainError when
/// the new state folds or loses positive temperature.
CanonicalState step(const CanonicalState& cs, const CanonicalFluid& fluid, double dt, Scheme scheme,
                    const StepOptions& options = {}, StepStats* stats = nullptr);

/// Validates y_x > 0, finite fields, T > 0 (thermal) and pinned boundary values.
void check_state(const CanonicalState& cs, const CanonicalFluid& fluid);

/// Average of two consecutive states (the implicit-midpoint stage point).
CanonicalState midpoint_state(const CanonicalState& a, const CanonicalState& b);

/// Field history of three consecutive canonical states for the half_levels
/// stencil: the two midpoint states with rates from hamilton_rhs.
History<ThermoFieldState> midpoint_history(const CanonicalState& previous, const CanonicalState& current,
                                           const CanonicalState& next, const CanonicalFluid& fluid);

double total_hamiltonian(const CanonicalState& cs, const CanonicalFluid& fluid);
double total_hamiltonian(const CanonicalState& cs, const CanonicalFluid& fluid, NodeRange range);

/// F_D = H_D - [Theta^1_alpha z^alpha] evaluated between the two ends
/// (outer normal +1 on the right, -1 on the left). Equal to H_D on periodic grids.
double neumann_hamiltonian(const CanonicalState& cs, const CanonicalFluid& fluid);

struct Totals {
  double H_D = 0.0;
  double mass = 0.0;      // integral of rho
  double entropy = 0.0;   // integral of rho s
  double momentum = 0.0;  // integral of rho M v
};
Totals totals(const CanonicalState& cs, const CanonicalFluid& fluid);

inline constexpr double kRestFrameProbe = 1e-5;
inline constexpr double kRestFrameReductionTolerance = 1e-6;

/// At v = 0 probes delta(rho e) = T delta(rho s) + (e - T s + p / rho) delta rho
/// by varying pi0 and y_x at every node. Throws std::invalid_argument when the
/// state moves.
DiagnosticReport rest_frame_reduction(const CanonicalState& cs, const CanonicalFluid& fluid,
                                      double probe = kRestFrameProbe,
                                      double tolerance = kRestFrameReductionTolerance);

}  // namespace fieldflow
