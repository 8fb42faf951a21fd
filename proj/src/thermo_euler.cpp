#include "fieldflow/thermo_euler.hpp"

#include <algorithm>
#include <cmath>

namespace fieldflow {

Tensor2<double> thermo_contraction(const ThermoPoint<double>& pt, double tau_t, double tau_x, double y_t,
                                   double y_x) {
  const Tensor2<double> z{{{tau_t, tau_x}, {y_t, y_x}}};  // z[alpha][nu]
  Tensor2<double> t{};
  for (int m = 0; m < 2; ++m) {
    for (int n = 0; n < 2; ++n) {
      t[m][n] = pt.Theta[m][0] * z[0][n] + pt.Theta[m][1] * z[1][n] - (m == n ? pt.L : 0.0);
    }
  }
  return t;
}

double potential_jacobian_det(double tau_t, double tau_x, double y_t, double y_x) {
  return tau_t * y_x - tau_x * y_t;
}

namespace {

using J2 = Jet<2>;

J2 time_jet(const PotentialDerivatives& f) { return J2(f.t, {f.tt, f.tx}); }
J2 space_jet(const PotentialDerivatives& f) { return J2(f.x, {f.tx, f.xx}); }

ThermoPoint<J2> jet_point(const PotentialDerivatives& tau, const PotentialDerivatives& y, const ThermalFluid& fluid) {
  return thermo_point(time_jet(tau), space_jet(tau), time_jet(y), space_jet(y), fluid);
}

}  // namespace

NoetherSides noether4(const PotentialDerivatives& tau, const PotentialDerivatives& y, const ThermalFluid& fluid) {
  if (!(potential_jacobian_det(tau.t, tau.x, y.t, y.x) > 0.0)) {
    throw ConfigurationError("potential Jacobian (z^alpha_nu) is not invertible");
  }
  const auto pt = jet_point(tau, y, fluid);
  std::array<double, 2> E{};
  for (int a = 0; a < 2; ++a) E[a] = pt.Theta[0][a].d[0] + pt.Theta[1][a].d[1];
  const Tensor2<double> z{{{tau.t, tau.x}, {y.t, y.x}}};
  NoetherSides s;
  for (int n = 0; n < 2; ++n) {
    s.lhs[n] = pt.t[0][n].d[0] + pt.t[1][n].d[1];
    s.rhs[n] = E[0] * z[0][n] + E[1] * z[1][n];
  }
  return s;
}

FieldEquationForms thermo_field_exact(const PotentialDerivatives& tau, const PotentialDerivatives& y,
                                      const ThermalFluid& fluid) {
  const auto pt = jet_point(tau, y, fluid);
  const double M = fluid.constants.molar_mass;
  const double beta = fluid.constants.beta;
  const double rho = pt.rho.v, v = pt.v.v, x_y = 1.0 / y.x;
  const J2 rho_s = pt.rho * pt.s;
  const J2 rho_s_v = rho_s * pt.v;
  FieldEquationForms f;
  f.conservative = pt.Theta[0][1].d[0] + pt.Theta[1][1].d[1];
  const double dv = pt.v.d[0] + v * pt.v.d[1];
  const double ds = pt.s.d[0] + v * pt.s.d[1];
  f.expanded = -x_y * (pt.p.d[1] + M * rho * dv) - beta * x_y * tau.x * rho * ds;
  f.entropy_divergence = rho_s.d[0] + rho_s_v.d[1];
  f.entropy_advective = rho * ds;
  return f;
}

// ---------------------------------------------------------------------------

namespace {

struct ThermoArrays {
  std::vector<double> tau_t, tau_x, y_t, y_x, rho, v, s, p;
  std::vector<double> Th00, Th10, Th01, Th11, t00, t10, t01, t11, rho_s, rho_s_v;
};

ThermoArrays thermo_arrays(const ThermoFieldState& st, const ThermalFluid& fluid) {
  ThermoArrays a;
  a.tau_x = derivative(st.grid, st.tau.value, st.tau.jump);
  a.y_x = derivative(st.grid, st.y.value, st.y.jump);
  a.tau_t = st.tau.rate;
  a.y_t = st.y.rate;
  const std::size_t n = a.y_x.size();
  for (auto* vec : {&a.rho, &a.v, &a.s, &a.p, &a.Th00, &a.Th10, &a.Th01, &a.Th11, &a.t00, &a.t10, &a.t01, &a.t11,
                    &a.rho_s, &a.rho_s_v}) {
    vec->resize(n);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(a.y_x[i] > 0.0)) throw ConfigurationError("label gradient y_x is not positive");
    if (!(potential_jacobian_det(a.tau_t[i], a.tau_x[i], a.y_t[i], a.y_x[i]) > 0.0)) {
      throw ConfigurationError("potential Jacobian (z^alpha_nu) is not invertible");
    }
    const auto pt = thermo_point(a.tau_t[i], a.tau_x[i], a.y_t[i], a.y_x[i], fluid);
    a.rho[i] = pt.rho;
    a.v[i] = pt.v;
    a.s[i] = pt.s;
    a.p[i] = pt.p;
    a.Th00[i] = pt.Theta[0][0];
    a.Th10[i] = pt.Theta[1][0];
    a.Th01[i] = pt.Theta[0][1];
    a.Th11[i] = pt.Theta[1][1];
    a.t00[i] = pt.t[0][0];
    a.t10[i] = pt.t[1][0];
    a.t01[i] = pt.t[0][1];
    a.t11[i] = pt.t[1][1];
    a.rho_s[i] = pt.rho * pt.s;
    a.rho_s_v[i] = pt.rho * pt.s * pt.v;
  }
  return a;
}

ThermoFieldState thermo_half(const ThermoFieldState& a, const ThermoFieldState& b, double dt) {
  return {a.grid, half_level(a.tau, b.tau, dt), half_level(a.y, b.y, dt)};
}

Stations<ThermoArrays> stations(const History<ThermoFieldState>& h, const ThermalFluid& fluid,
                                TimeStencil stencil) {
  return make_stations(
      h, stencil, [&](const ThermoFieldState& s) { return thermo_arrays(s, fluid); }, thermo_half);
}

double max_skip(const std::vector<double>& v, int skip) { return max_norm(v, skip); }

}  // namespace

double EntropyResidual::max_divergence(int skip_edges) const { return max_skip(divergence, skip_edges); }
double EntropyResidual::max_advective(int skip_edges) const { return max_skip(advective, skip_edges); }
double ThermoFieldResidual::max_conservative(int skip_edges) const { return max_skip(conservative, skip_edges); }
double ThermoFieldResidual::max_expanded(int skip_edges) const { return max_skip(expanded, skip_edges); }

EntropyResidual entropy_residual(const History<ThermoFieldState>& h, const ThermalFluid& fluid,
                                 TimeStencil stencil) {
  const auto st = stations(h, fluid, stencil);
  const auto& grid = h.current.grid;
  EntropyResidual r;
  r.divergence = st.divergence(grid, &ThermoArrays::rho_s, &ThermoArrays::rho_s_v);
  const auto s_t = st.time_derivative(&ThermoArrays::s);
  const auto s = st.middle(&ThermoArrays::s);
  const auto s_x = derivative(grid, s);
  const auto rho = st.middle(&ThermoArrays::rho);
  const auto v = st.middle(&ThermoArrays::v);
  r.advective.resize(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) r.advective[i] = rho[i] * (s_t[i] + v[i] * s_x[i]);
  return r;
}

ThermoFieldResidual thermo_field_residual(const History<ThermoFieldState>& h, const ThermalFluid& fluid,
                                          TimeStencil stencil) {
  const auto st = stations(h, fluid, stencil);
  const auto& grid = h.current.grid;
  const double M = fluid.constants.molar_mass;
  const double beta = fluid.constants.beta;
  ThermoFieldResidual r;
  r.conservative = st.divergence(grid, &ThermoArrays::Th01, &ThermoArrays::Th11);
  const auto v_t = st.time_derivative(&ThermoArrays::v);
  const auto s_t = st.time_derivative(&ThermoArrays::s);
  const auto v = st.middle(&ThermoArrays::v);
  const auto s = st.middle(&ThermoArrays::s);
  const auto rho = st.middle(&ThermoArrays::rho);
  const auto y_x = st.middle(&ThermoArrays::y_x);
  const auto tau_x = st.middle(&ThermoArrays::tau_x);
  const auto v_x = derivative(grid, v);
  const auto s_x = derivative(grid, s);
  const auto p_x = derivative(grid, st.middle(&ThermoArrays::p));
  r.expanded.resize(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double x_y = 1.0 / y_x[i];
    r.expanded[i] = -x_y * (p_x[i] + M * rho[i] * (v_t[i] + v[i] * v_x[i])) -
                    beta * x_y * tau_x[i] * rho[i] * (s_t[i] + v[i] * s_x[i]);
  }
  return r;
}

NoetherField noether4_residual(const History<ThermoFieldState>& h, const ThermalFluid& fluid, TimeStencil stencil) {
  const auto st = stations(h, fluid, stencil);
  const auto& grid = h.current.grid;
  const auto E0 = st.divergence(grid, &ThermoArrays::Th00, &ThermoArrays::Th10);
  const auto E1 = st.divergence(grid, &ThermoArrays::Th01, &ThermoArrays::Th11);
  const std::array<std::vector<double>, 2> tau_nu{st.middle(&ThermoArrays::tau_t), st.middle(&ThermoArrays::tau_x)};
  const std::array<std::vector<double>, 2> y_nu{st.middle(&ThermoArrays::y_t), st.middle(&ThermoArrays::y_x)};
  NoetherField out;
  out.lhs[0] = st.divergence(grid, &ThermoArrays::t00, &ThermoArrays::t10);
  out.lhs[1] = st.divergence(grid, &ThermoArrays::t01, &ThermoArrays::t11);
  for (int n = 0; n < 2; ++n) {
    out.rhs[n].resize(E0.size());
    for (std::size_t i = 0; i < E0.size(); ++i) out.rhs[n][i] = E0[i] * tau_nu[n][i] + E1[i] * y_nu[n][i];
  }
  return out;
}

ThermoProfile thermo_profile(const ThermoFieldState& state, const ThermalFluid& fluid) {
  const auto tau_x = derivative(state.grid, state.tau.value, state.tau.jump);
  const auto y_x = derivative(state.grid, state.y.value, state.y.jump);
  ThermoProfile p;
  for (int i = 0; i < state.grid.n; ++i) {
    const auto pt = thermo_point(state.tau.rate[i], tau_x[i], state.y.rate[i], y_x[i], fluid);
    p.rho.push_back(pt.rho);
    p.v.push_back(pt.v);
    p.T.push_back(pt.T);
    p.s.push_back(pt.s);
    p.p.push_back(pt.p);
    p.e.push_back(pt.e);
    p.H.push_back(pt.t[0][0]);
  }
  return p;
}

}  // namespace fieldflow
