#pragma once

#include <array>
#include <vector>

#include "fieldflow/diagnostics.hpp"
#include "fieldflow/eos.hpp"
#include "fieldflow/grid.hpp"
#include "fieldflow/kinematics.hpp"
#include "fieldflow/manufactured.hpp"
#include "fieldflow/stencil.hpp"

namespace fieldflow {

enum class Picture { lagrange, euler };

template <class S> using Tensor2 = std::array<std::array<S, 2>, 2>;

/// Energy-momentum components c[upper][lower] in 1D (index 0 is time).
struct EnergyMomentum {
  Picture picture = Picture::lagrange;
  Tensor2<double> c{};
};

struct BarotropicFluid {
  BarotropicEos eos;
  MaterialConstants constants;
};

/// Placement x(t, y) over a material grid.
struct LagrangeFieldState {
  Grid1D grid;
  GridField x;
};

/// Labels y(t, x) over a physical grid.
struct EulerFieldState {
  Grid1D grid;
  GridField y;
};

// ---------------------------------------------------------------------------
// Point evaluators. S is double or a Jet carrying derivatives along (t, space).
// ---------------------------------------------------------------------------

template <class S>
struct LagrangePoint {
  S V, v, e, p;
  S L;
  std::array<S, 2> P;  // P^beta (beta = 0 time, 1 material)
  Tensor2<S> T;        // T^beta_alpha
};

/// Barotropic Lagrange picture from x_y and v = xdot.
template <class S>
LagrangePoint<S> lagrange_point(const S& x_y, const S& v, const BarotropicFluid& fluid) {
  const double M = fluid.constants.molar_mass;
  LagrangePoint<S> r;
  r.V = x_y;
  r.v = v;
  r.e = fluid.eos.energy(r.V);
  r.p = fluid.eos.pressure(r.V);
  const S y_x = 1.0 / x_y;
  const S kinetic = 0.5 * M * v * v;
  r.L = kinetic - r.e;
  r.P[0] = M * v;
  r.P[1] = r.p * r.V * y_x;
  r.T[0][0] = kinetic + r.e;
  r.T[1][0] = r.p * r.V * y_x * v;
  r.T[0][1] = M * v * x_y;
  r.T[1][1] = r.e + r.p * r.V - kinetic;
  return r;
}

template <class S>
struct EulerPoint {
  S rho, V, v, e, p;
  S L;
  std::array<S, 2> Theta;  // Theta^mu (mu = 0 time, 1 space)
  Tensor2<S> t;            // t^mu_nu
};

/// Barotropic Euler picture from y_t and y_x.
template <class S>
EulerPoint<S> euler_point(const S& y_t, const S& y_x, const BarotropicFluid& fluid) {
  const double M = fluid.constants.molar_mass;
  EulerPoint<S> r;
  r.rho = y_x;
  r.V = 1.0 / y_x;
  r.v = -y_t / y_x;
  r.e = fluid.eos.energy(r.V);
  r.p = fluid.eos.pressure(r.V);
  const S x_y = r.V;
  const S kinetic = 0.5 * M * r.v * r.v;
  r.L = r.rho * (kinetic - r.e);
  r.Theta[0] = -r.rho * x_y * M * r.v;
  r.Theta[1] = -r.rho * x_y * (kinetic + r.e + r.p * r.V);
  r.t[0][0] = r.rho * (kinetic + r.e);
  r.t[1][0] = r.rho * r.v * (kinetic + r.e + r.p * r.V);
  r.t[0][1] = -r.rho * M * r.v;
  r.t[1][1] = -r.p - r.rho * M * r.v * r.v;
  return r;
}

/// T^beta_alpha = P^beta x_alpha - delta L, with x_alpha = (v, x_y).
Tensor2<double> lagrange_contraction(const LagrangePoint<double>& pt, double x_y);
/// t^mu_nu = Theta^mu y_nu - delta L, with y_nu = (y_t, y_x).
Tensor2<double> euler_contraction(const EulerPoint<double>& pt, double y_t, double y_x);

EnergyMomentum lagrange_tensor(double x_y, double v, const BarotropicFluid& fluid);
EnergyMomentum euler_tensor(double y_t, double y_x, const BarotropicFluid& fluid);

// ---------------------------------------------------------------------------
// Off-shell identities with exact derivatives
// ---------------------------------------------------------------------------

/// Both sides of d_beta T^beta_alpha = (d_beta P^beta) x_alpha for each alpha.
struct NoetherSides {
  std::array<double, 2> lhs{};
  std::array<double, 2> rhs{};
  double residual() const;
};

/// Evaluated with exact first and second derivatives of x(t, y).
NoetherSides noether_lagrange(const PotentialDerivatives& x, const BarotropicFluid& fluid);
/// Evaluated with exact first and second derivatives of y(t, x).
NoetherSides noether_euler(const PotentialDerivatives& y, const BarotropicFluid& fluid);

/// The spatial Noether components imply the time component:
/// (div T)_1 y_x v = (div T)_0 (Lagrange), (div t)_0 = -v (div t)_1 (Euler).
struct DependencySides {
  double lhs = 0.0;
  double rhs = 0.0;
};
DependencySides dependency_lagrange(const PotentialDerivatives& x, const BarotropicFluid& fluid);
DependencySides dependency_euler(const PotentialDerivatives& y, const BarotropicFluid& fluid);

/// Exact Newton / Euler-equation residuals at a point.
double newton_residual_exact(const PotentialDerivatives& x, const BarotropicFluid& fluid);
double euler_residual_exact(const PotentialDerivatives& y, const BarotropicFluid& fluid);

// ---------------------------------------------------------------------------
// Finite-difference residuals over three-level histories
// ---------------------------------------------------------------------------

/// Lagrange: M rho vdot + dp/dx. Euler: dp/dx + M rho (v_t + v v_x).
std::vector<double> field_residual(const History<LagrangeFieldState>& h, const BarotropicFluid& fluid,
                                   TimeStencil stencil = TimeStencil::central);
std::vector<double> field_residual(const History<EulerFieldState>& h, const BarotropicFluid& fluid,
                                   TimeStencil stencil = TimeStencil::central);

/// Per-index residual fields of the Noether identity.
struct NoetherField {
  std::array<std::vector<double>, 2> lhs;
  std::array<std::vector<double>, 2> rhs;
  double max_residual(int skip_edges = 0) const;
};

NoetherField noether_residual(const History<LagrangeFieldState>& h, const BarotropicFluid& fluid,
                              TimeStencil stencil = TimeStencil::central);
NoetherField noether_residual(const History<EulerFieldState>& h, const BarotropicFluid& fluid,
                              TimeStencil stencil = TimeStencil::central);

/// Max |lhs - rhs| of the dependency identity on a history.
double dependency_check(const History<LagrangeFieldState>& h, const BarotropicFluid& fluid);
double dependency_check(const History<EulerFieldState>& h, const BarotropicFluid& fluid);

/// d_t(M v^2/2 + e) + V d_x(p v) on a Lagrange history.
std::vector<double> energy_balance_residual(const History<LagrangeFieldState>& h, const BarotropicFluid& fluid);

// ---------------------------------------------------------------------------
// Lagrange <-> Euler transformation
// ---------------------------------------------------------------------------

inline constexpr double kPictureTransformTolerance = 1e-8;
inline constexpr double kRestFrameTolerance = 1e-12;

struct EulerFromLagrange {
  EulerFieldState euler;
  DiagnosticReport report;
};
struct LagrangeFromEuler {
  LagrangeFieldState lagrange;
  DiagnosticReport report;
};

/// Inverts x(y) to y(x) on a physical grid with the same node count and
/// checks the four cross-picture identities
///   Theta^0 = -rho T^0_a,  Theta^k = -rho v T^0_a - rho x_y T^1_a,
///   P^0 = -V t^0_k,        P^a = V y_x v t^0_k - V y_x t^1_k
/// at corresponding points. Periodic grids only.
EulerFromLagrange lagrange_to_euler(const LagrangeFieldState& state, const BarotropicFluid& fluid,
                                    double tolerance = kPictureTransformTolerance);
LagrangeFromEuler euler_to_lagrange(const EulerFieldState& state, const BarotropicFluid& fluid,
                                    double tolerance = kPictureTransformTolerance);

/// At v = 0: P^a_k = -V y^a_l t^l_k and Theta^k_a = -rho x^k_b T^b_a at each node.
DiagnosticReport rest_frame_correspondence(const EulerFieldState& state, const BarotropicFluid& fluid,
                                           double tolerance = kRestFrameTolerance);

/// Inverts an increasing periodic map f(s) sampled on `grid` (winding `f.jump`)
/// onto the grid of f-values starting at f(s_0) with the same node count.
/// Returns the inverse map g with rate gdot = -g' fdot (the label/placement
/// duality of the two pictures). Spectrally accurate for smooth maps.
GridField invert_periodic_map(const Grid1D& grid, const GridField& f, Grid1D* target_grid);

}  // namespace fieldflow
