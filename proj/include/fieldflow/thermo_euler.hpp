#pragma once

#include <array>
#include <vector>

#include "fieldflow/barotropic.hpp"
#include "fieldflow/eos.hpp"
#include "fieldflow/grid.hpp"
#include "fieldflow/kinematics.hpp"
#include "fieldflow/manufactured.hpp"
#include "fieldflow/stencil.hpp"

namespace fieldflow {

struct ThermalFluid {
  ThermalEos eos;
  MaterialConstants constants;
};

/// Material time tau(t, x) and labels y(t, x) over a physical grid.
struct ThermoFieldState {
  Grid1D grid;
  GridField tau;
  GridField y;
};

template <class S>
struct ThermoPoint {
  S rho, V, v, T, f, s, p, e;
  S L;
  Tensor2<S> Theta;  // Theta^mu_alpha, alpha = 0 (tau), 1 (y)
  Tensor2<S> t;      // t^mu_nu
};

/// Four-potential Euler picture from the gradients of tau and y. Throws
/// DomainError when the derived temperature is not positive.
template <class S>
ThermoPoint<S> thermo_point(const S& tau_t, const S& tau_x, const S& y_t, const S& y_x, const ThermalFluid& fluid) {
  const double M = fluid.constants.molar_mass;
  const double beta = fluid.constants.beta;
  ThermoPoint<S> r;
  r.rho = y_x;
  r.V = 1.0 / y_x;
  r.v = -y_t / y_x;
  r.T = beta * (tau_t + r.v * tau_x);
  if (!(value_of(r.T) > 0.0)) throw DomainError("derived temperature is not positive");
  r.f = fluid.eos.free_energy(r.V, r.T);
  r.s = fluid.eos.entropy(r.V, r.T);
  r.p = fluid.eos.pressure(r.V, r.T);
  r.e = r.f + r.T * r.s;
  const S x_y = r.V;
  const S kinetic = 0.5 * M * r.v * r.v;
  r.L = r.rho * (kinetic - r.f);
  const S momentum = M * r.v + beta * r.s * tau_x;
  r.Theta[0][0] = beta * r.rho * r.s;
  r.Theta[1][0] = beta * r.rho * r.s * r.v;
  r.Theta[0][1] = -r.rho * x_y * momentum;
  r.Theta[1][1] = -r.rho * x_y * (momentum * r.v + r.f - kinetic + r.p * r.V);
  r.t[0][0] = r.rho * (kinetic + r.e);
  r.t[1][0] = r.rho * r.v * (kinetic + r.e + r.p * r.V);
  r.t[0][1] = -r.rho * M * r.v;
  r.t[1][1] = -r.p - r.rho * M * r.v * r.v;
  return r;
}

/// t^mu_nu = Theta^mu_alpha z^alpha_nu - delta L.
Tensor2<double> thermo_contraction(const ThermoPoint<double>& pt, double tau_t, double tau_x, double y_t, double y_x);

/// det(z^alpha_nu) = tau_t y_x - tau_x y_t (equals rho T / beta).
double potential_jacobian_det(double tau_t, double tau_x, double y_t, double y_x);

/// Both sides of d_mu t^mu_nu = (d_mu Theta^mu_alpha) z^alpha_nu with exact derivatives.
NoetherSides noether4(const PotentialDerivatives& tau, const PotentialDerivatives& y, const ThermalFluid& fluid);

/// Field equation of y at a point in two algebraically equivalent forms:
/// conservative d_mu Theta^mu_1 and the advective expansion
/// -x_y [p_x + M rho u.grad v] - beta x_y tau_x rho u.grad s.
struct FieldEquationForms {
  double conservative = 0.0;
  double expanded = 0.0;
  double entropy_divergence = 0.0;  // d_mu(rho s u^mu)
  double entropy_advective = 0.0;   // rho u.grad s
};
FieldEquationForms thermo_field_exact(const PotentialDerivatives& tau, const PotentialDerivatives& y,
                                      const ThermalFluid& fluid);

// ---------------------------------------------------------------------------
// Finite-difference residuals over three-level histories
// ---------------------------------------------------------------------------

struct EntropyResidual {
  std::vector<double> divergence;  // d_t(rho s) + d_x(rho s v)
  std::vector<double> advective;   // rho (s_t + v s_x)
  double max_divergence(int skip_edges = 0) const;
  double max_advective(int skip_edges = 0) const;
};

EntropyResidual entropy_residual(const History<ThermoFieldState>& h, const ThermalFluid& fluid,
                                 TimeStencil stencil = TimeStencil::central);

struct ThermoFieldResidual {
  std::vector<double> conservative;  // d_t Theta^0_1 + d_x Theta^1_1
  std::vector<double> expanded;      // advective expansion
  double max_conservative(int skip_edges = 0) const;
  double max_expanded(int skip_edges = 0) const;
};

ThermoFieldResidual thermo_field_residual(const History<ThermoFieldState>& h, const ThermalFluid& fluid,
                                          TimeStencil stencil = TimeStencil::central);

/// Noether identity on a history; also asserts det(z^alpha_nu) > 0 at every
/// station (ConfigurationError otherwise).
NoetherField noether4_residual(const History<ThermoFieldState>& h, const ThermalFluid& fluid,
                               TimeStencil stencil = TimeStencil::central);

/// Point-wise thermo state arrays at one level (diagnostic plumbing).
struct ThermoProfile {
  std::vector<double> rho, v, T, s, p, e, H;
};
ThermoProfile thermo_profile(const ThermoFieldState& state, const ThermalFluid& fluid);

}  // namespace fieldflow
