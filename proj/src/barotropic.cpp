#include "fieldflow/barotropic.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "fieldflow/interpolation.hpp"

namespace fieldflow {

Tensor2<double> lagrange_contraction(const LagrangePoint<double>& pt, double x_y) {
  const std::array<double, 2> x_alpha{pt.v, x_y};
  Tensor2<double> T{};
  for (int b = 0; b < 2; ++b)
    for (int a = 0; a < 2; ++a) T[b][a] = pt.P[b] * x_alpha[a] - (a == b ? pt.L : 0.0);
  return T;
}

Tensor2<double> euler_contraction(const EulerPoint<double>& pt, double y_t, double y_x) {
  const std::array<double, 2> y_nu{y_t, y_x};
  Tensor2<double> t{};
  for (int m = 0; m < 2; ++m)
    for (int n = 0; n < 2; ++n) t[m][n] = pt.Theta[m] * y_nu[n] - (m == n ? pt.L : 0.0);
  return t;
}

EnergyMomentum lagrange_tensor(double x_y, double v, const BarotropicFluid& fluid) {
  return {Picture::lagrange, lagrange_point(x_y, v, fluid).T};
}

EnergyMomentum euler_tensor(double y_t, double y_x, const BarotropicFluid& fluid) {
  return {Picture::euler, euler_point(y_t, y_x, fluid).t};
}

double NoetherSides::residual() const {
  return std::max(std::abs(lhs[0] - rhs[0]), std::abs(lhs[1] - rhs[1]));
}

namespace {

using J2 = Jet<2>;

J2 time_jet(const PotentialDerivatives& f) { return J2(f.t, {f.tt, f.tx}); }
J2 space_jet(const PotentialDerivatives& f) { return J2(f.x, {f.tx, f.xx}); }

double divergence(const J2& a0, const J2& a1) { return a0.d[0] + a1.d[1]; }

}  // namespace

NoetherSides noether_lagrange(const PotentialDerivatives& x, const BarotropicFluid& fluid) {
  const auto pt = lagrange_point(space_jet(x), time_jet(x), fluid);
  const double E = divergence(pt.P[0], pt.P[1]);
  const std::array<double, 2> x_alpha{x.t, x.x};
  NoetherSides s;
  for (int a = 0; a < 2; ++a) {
    s.lhs[a] = divergence(pt.T[0][a], pt.T[1][a]);
    s.rhs[a] = E * x_alpha[a];
  }
  return s;
}

NoetherSides noether_euler(const PotentialDerivatives& y, const BarotropicFluid& fluid) {
  const auto pt = euler_point(time_jet(y), space_jet(y), fluid);
  const double E = divergence(pt.Theta[0], pt.Theta[1]);
  const std::array<double, 2> y_nu{y.t, y.x};
  NoetherSides s;
  for (int n = 0; n < 2; ++n) {
    s.lhs[n] = divergence(pt.t[0][n], pt.t[1][n]);
    s.rhs[n] = E * y_nu[n];
  }
  return s;
}

DependencySides dependency_lagrange(const PotentialDerivatives& x, const BarotropicFluid& fluid) {
  const auto pt = lagrange_point(space_jet(x), time_jet(x), fluid);
  const double div0 = divergence(pt.T[0][0], pt.T[1][0]);
  const double div1 = divergence(pt.T[0][1], pt.T[1][1]);
  return {div1 * (1.0 / x.x) * x.t, div0};
}

DependencySides dependency_euler(const PotentialDerivatives& y, const BarotropicFluid& fluid) {
  const auto pt = euler_point(time_jet(y), space_jet(y), fluid);
  const double div0 = divergence(pt.t[0][0], pt.t[1][0]);
  const double div1 = divergence(pt.t[0][1], pt.t[1][1]);
  return {div0, -pt.v.v * div1};
}

double newton_residual_exact(const PotentialDerivatives& x, const BarotropicFluid& fluid) {
  const J2 V = space_jet(x);
  const J2 p = fluid.eos.pressure(V);
  const double rho = 1.0 / x.x;
  return fluid.constants.molar_mass * rho * x.tt + p.d[1] / x.x;
}

double euler_residual_exact(const PotentialDerivatives& y, const BarotropicFluid& fluid) {
  const J2 y_t = time_jet(y), y_x = space_jet(y);
  const J2 V = 1.0 / y_x;
  const J2 v = -y_t / y_x;
  const J2 p = fluid.eos.pressure(V);
  return p.d[1] + fluid.constants.molar_mass * y_x.v * (v.d[0] + v.v * v.d[1]);
}

// ---------------------------------------------------------------------------
// Grid evaluations
// ---------------------------------------------------------------------------

namespace {

struct LagrangeArrays {
  std::vector<double> x_y, v, V, p, P0, P1, T00, T10, T01, T11, energy, pv;
};

LagrangeArrays lagrange_arrays(const LagrangeFieldState& s, const BarotropicFluid& fluid) {
  LagrangeArrays a;
  a.x_y = derivative(s.grid, s.x.value, s.x.jump);
  a.v = s.x.rate;
  const std::size_t n = a.x_y.size();
  for (auto* vec : {&a.V, &a.p, &a.P0, &a.P1, &a.T00, &a.T10, &a.T01, &a.T11, &a.energy, &a.pv}) vec->resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto pt = lagrange_point(a.x_y[i], a.v[i], fluid);
    a.V[i] = pt.V;
    a.p[i] = pt.p;
    a.P0[i] = pt.P[0];
    a.P1[i] = pt.P[1];
    a.T00[i] = pt.T[0][0];
    a.T10[i] = pt.T[1][0];
    a.T01[i] = pt.T[0][1];
    a.T11[i] = pt.T[1][1];
    a.energy[i] = pt.T[0][0];
    a.pv[i] = pt.p * pt.v;
  }
  return a;
}

LagrangeFieldState lagrange_half(const LagrangeFieldState& a, const LagrangeFieldState& b, double dt) {
  return {a.grid, half_level(a.x, b.x, dt)};
}

struct EulerArrays {
  std::vector<double> y_t, y_x, rho, v, p, Theta0, Theta1, t00, t10, t01, t11;
};

EulerArrays euler_arrays(const EulerFieldState& s, const BarotropicFluid& fluid) {
  EulerArrays a;
  a.y_x = derivative(s.grid, s.y.value, s.y.jump);
  a.y_t = s.y.rate;
  const std::size_t n = a.y_x.size();
  for (auto* vec : {&a.rho, &a.v, &a.p, &a.Theta0, &a.Theta1, &a.t00, &a.t10, &a.t01, &a.t11}) vec->resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(a.y_x[i] > 0.0)) throw ConfigurationError("label gradient y_x is not positive");
    const auto pt = euler_point(a.y_t[i], a.y_x[i], fluid);
    a.rho[i] = pt.rho;
    a.v[i] = pt.v;
    a.p[i] = pt.p;
    a.Theta0[i] = pt.Theta[0];
    a.Theta1[i] = pt.Theta[1];
    a.t00[i] = pt.t[0][0];
    a.t10[i] = pt.t[1][0];
    a.t01[i] = pt.t[0][1];
    a.t11[i] = pt.t[1][1];
  }
  return a;
}

EulerFieldState euler_half(const EulerFieldState& a, const EulerFieldState& b, double dt) {
  return {a.grid, half_level(a.y, b.y, dt)};
}

Stations<LagrangeArrays> stations(const History<LagrangeFieldState>& h, const BarotropicFluid& fluid,
                                  TimeStencil stencil) {
  for (const auto* s : {&h.previous, &h.current, &h.next}) {
    for (double x_y : derivative(s->grid, s->x.value, s->x.jump)) {
      if (!(x_y > 0.0)) throw ConfigurationError("placement gradient x_y is not positive");
    }
  }
  return make_stations(
      h, stencil, [&](const LagrangeFieldState& s) { return lagrange_arrays(s, fluid); }, lagrange_half);
}

Stations<EulerArrays> stations(const History<EulerFieldState>& h, const BarotropicFluid& fluid,
                               TimeStencil stencil) {
  return make_stations(
      h, stencil, [&](const EulerFieldState& s) { return euler_arrays(s, fluid); }, euler_half);
}

}  // namespace

std::vector<double> field_residual(const History<LagrangeFieldState>& h, const BarotropicFluid& fluid,
                                   TimeStencil stencil) {
  const auto st = stations(h, fluid, stencil);
  const auto& grid = h.current.grid;
  const auto vdot = st.time_derivative(&LagrangeArrays::v);
  const auto dp = derivative(grid, st.middle(&LagrangeArrays::p));
  const auto x_y = st.middle(&LagrangeArrays::x_y);
  std::vector<double> r(vdot.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double rho = 1.0 / x_y[i];
    r[i] = fluid.constants.molar_mass * rho * vdot[i] + dp[i] / x_y[i];
  }
  return r;
}

std::vector<double> field_residual(const History<EulerFieldState>& h, const BarotropicFluid& fluid,
                                   TimeStencil stencil) {
  const auto st = stations(h, fluid, stencil);
  const auto& grid = h.current.grid;
  const auto v_t = st.time_derivative(&EulerArrays::v);
  const auto v = st.middle(&EulerArrays::v);
  const auto v_x = derivative(grid, v);
  const auto p_x = derivative(grid, st.middle(&EulerArrays::p));
  const auto rho = st.middle(&EulerArrays::rho);
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    r[i] = p_x[i] + fluid.constants.molar_mass * rho[i] * (v_t[i] + v[i] * v_x[i]);
  }
  return r;
}

double NoetherField::max_residual(int skip_edges) const {
  double m = 0.0;
  for (int a = 0; a < 2; ++a) {
    const int n = static_cast<int>(lhs[a].size());
    for (int i = skip_edges; i + skip_edges < n; ++i) m = std::max(m, std::abs(lhs[a][i] - rhs[a][i]));
  }
  return m;
}

NoetherField noether_residual(const History<LagrangeFieldState>& h, const BarotropicFluid& fluid,
                              TimeStencil stencil) {
  const auto st = stations(h, fluid, stencil);
  const auto& grid = h.current.grid;
  const auto E = st.divergence(grid, &LagrangeArrays::P0, &LagrangeArrays::P1);
  const std::array<std::vector<double>, 2> x_alpha{st.middle(&LagrangeArrays::v), st.middle(&LagrangeArrays::x_y)};
  NoetherField out;
  out.lhs[0] = st.divergence(grid, &LagrangeArrays::T00, &LagrangeArrays::T10);
  out.lhs[1] = st.divergence(grid, &LagrangeArrays::T01, &LagrangeArrays::T11);
  for (int a = 0; a < 2; ++a) {
    out.rhs[a].resize(E.size());
    for (std::size_t i = 0; i < E.size(); ++i) out.rhs[a][i] = E[i] * x_alpha[a][i];
  }
  return out;
}

NoetherField noether_residual(const History<EulerFieldState>& h, const BarotropicFluid& fluid,
                              TimeStencil stencil) {
  const auto st = stations(h, fluid, stencil);
  const auto& grid = h.current.grid;
  const auto E = st.divergence(grid, &EulerArrays::Theta0, &EulerArrays::Theta1);
  const std::array<std::vector<double>, 2> y_nu{st.middle(&EulerArrays::y_t), st.middle(&EulerArrays::y_x)};
  NoetherField out;
  out.lhs[0] = st.divergence(grid, &EulerArrays::t00, &EulerArrays::t10);
  out.lhs[1] = st.divergence(grid, &EulerArrays::t01, &EulerArrays::t11);
  for (int n = 0; n < 2; ++n) {
    out.rhs[n].resize(E.size());
    for (std::size_t i = 0; i < E.size(); ++i) out.rhs[n][i] = E[i] * y_nu[n][i];
  }
  return out;
}

double dependency_check(const History<LagrangeFieldState>& h, const BarotropicFluid& fluid) {
  const auto st = stations(h, fluid, TimeStencil::central);
  const auto& grid = h.current.grid;
  const auto div0 = st.divergence(grid, &LagrangeArrays::T00, &LagrangeArrays::T10);
  const auto div1 = st.divergence(grid, &LagrangeArrays::T01, &LagrangeArrays::T11);
  const auto& x_y = st.at[1].x_y;
  const auto& v = st.at[1].v;
  double m = 0.0;
  for (std::size_t i = 0; i < div0.size(); ++i) m = std::max(m, std::abs(div1[i] / x_y[i] * v[i] - div0[i]));
  return m;
}

double dependency_check(const History<EulerFieldState>& h, const BarotropicFluid& fluid) {
  const auto st = stations(h, fluid, TimeStencil::central);
  const auto& grid = h.current.grid;
  const auto div0 = st.divergence(grid, &EulerArrays::t00, &EulerArrays::t10);
  const auto div1 = st.divergence(grid, &EulerArrays::t01, &EulerArrays::t11);
  const auto& v = st.at[1].v;
  double m = 0.0;
  for (std::size_t i = 0; i < div0.size(); ++i) m = std::max(m, std::abs(div0[i] + v[i] * div1[i]));
  return m;
}

std::vector<double> energy_balance_residual(const History<LagrangeFieldState>& h, const BarotropicFluid& fluid) {
  const auto st = stations(h, fluid, TimeStencil::central);
  const auto de = st.time_derivative(&LagrangeArrays::energy);
  // V d_x = V (d_y / x_y); in unimodular coordinates V = x_y.
  const auto dpv = derivative(h.current.grid, st.at[1].pv);
  const auto& V = st.at[1].V;
  const auto& x_y = st.at[1].x_y;
  std::vector<double> r(de.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = de[i] + V[i] * dpv[i] / x_y[i];
  return r;
}

// ---------------------------------------------------------------------------
// Picture transformation
// ---------------------------------------------------------------------------

GridField invert_periodic_map(const Grid1D& grid, const GridField& f, Grid1D* target_grid) {
  if (!grid.is_periodic()) throw std::invalid_argument("picture transformation needs a periodic grid");
  const int n = grid.n;
  const double period = grid.length();
  const double winding = f.jump;
  if (!(winding > 0.0)) throw ConfigurationError("map winding must be positive for an orientation-preserving map");
  const TrigInterpolant map(f.value, grid.origin, grid.h, winding);
  const auto slope = map.node_derivative();
  for (int i = 0; i < n; ++i) {
    if (!(slope[i] > 0.0)) throw ConfigurationError("map is not monotone at node " + std::to_string(i));
  }
  // Monotone cubic for a bracketed first guess, Newton on the trigonometric interpolant to finish.
  constexpr int pad = 3;
  std::vector<double> s_ext, f_ext, m_ext;
  for (int i = -pad; i < n + pad; ++i) {
    const int wraps = i < 0 ? -1 : (i >= n ? 1 : 0);
    const int k = i - wraps * n;
    s_ext.push_back(grid.x(i));
    f_ext.push_back(f.value[k] + wraps * winding);
    m_ext.push_back(slope[k]);
  }
  const MonotoneCubic curve(s_ext, f_ext, m_ext);
  std::optional<TrigInterpolant> rate;
  if (!f.rate.empty()) rate.emplace(f.rate, grid.origin, grid.h);

  const Grid1D target{n, winding / n, Boundary::periodic, f.value[0]};
  GridField g;
  g.value.resize(n);
  g.rate.resize(n);
  g.jump = period;
  for (int j = 0; j < n; ++j) {
    const double X = target.x(j);
    const double wraps = std::floor((X - f.value[0]) / winding);
    const double goal = X - wraps * winding;
    const double guess = curve.inverse(goal);
    double s = guess;
    for (int it = 0; it < 8; ++it) {
      const double ds = (map(s) - goal) / map.derivative(s);
      s -= ds;
      if (std::abs(ds) <= 1e-15 * std::max(1.0, std::abs(s))) break;
    }
    if (!std::isfinite(s) || std::abs(s - guess) > grid.h) s = guess;
    s += wraps * period;
    const double fdot = rate ? (*rate)(s) : 0.0;
    g.value[j] = s;
    g.rate[j] = -fdot / map.derivative(s);
  }
  if (target_grid) *target_grid = target;
  return g;
}

namespace {

struct IdentitySides {
  std::array<double, 4> lhs{};
  std::array<double, 4> rhs{};
};

// Lagrange objects (P0, P1, T01, T11) against Euler objects at one physical point.
IdentitySides cross_identities(double rho, double v, double y_x, const EulerPoint<double>& e, double P0, double P1,
                               double T01, double T11) {
  const double V = 1.0 / rho;
  const double x_y = 1.0 / y_x;
  IdentitySides s;
  s.lhs = {e.Theta[0], e.Theta[1], P0, P1};
  s.rhs = {-rho * T01, -rho * v * T01 - rho * x_y * T11, -V * e.t[0][1], V * y_x * v * e.t[0][1] - V * y_x * e.t[1][1]};
  return s;
}

void record(DiagnosticReport& report, const std::array<double, 4>& worst, double tolerance) {
  report.add("Theta0_a + rho T0_a", worst[0], tolerance);
  report.add("Theta1_a + rho v T0_a + rho x_y T1_a", worst[1], tolerance);
  report.add("P0_k + V t0_k", worst[2], tolerance);
  report.add("Pa_k - V y_x (v t0_k - t1_k)", worst[3], tolerance);
}

}  // namespace

EulerFromLagrange lagrange_to_euler(const LagrangeFieldState& state, const BarotropicFluid& fluid,
                                    double tolerance) {
  EulerFromLagrange out;
  Grid1D target;
  GridField y = invert_periodic_map(state.grid, state.x, &target);
  out.euler = {target, y};

  const int n = state.grid.n;
  const auto x_y = TrigInterpolant(state.x.value, state.grid.origin, state.grid.h, state.x.jump).node_derivative();
  std::vector<double> P0(n), P1(n), T01(n), T11(n);
  for (int i = 0; i < n; ++i) {
    const auto pt = lagrange_point(x_y[i], state.x.rate[i], fluid);
    P0[i] = pt.P[0];
    P1[i] = pt.P[1];
    T01[i] = pt.T[0][1];
    T11[i] = pt.T[1][1];
  }
  const auto y_x = TrigInterpolant(y.value, target.origin, target.h, y.jump).node_derivative();
  std::array<double, 4> worst{};
  const auto& g = state.grid;
  const TrigInterpolant iP0(P0, g.origin, g.h), iP1(P1, g.origin, g.h), iT01(T01, g.origin, g.h),
      iT11(T11, g.origin, g.h);
  for (int j = 0; j < target.n; ++j) {
    const auto e = euler_point(y.rate[j], y_x[j], fluid);
    const double s = y.value[j];
    const auto sides = cross_identities(e.rho, e.v, y_x[j], e, iP0(s), iP1(s), iT01(s), iT11(s));
    for (int k = 0; k < 4; ++k) worst[k] = std::max(worst[k], std::abs(sides.lhs[k] - sides.rhs[k]));
  }
  out.report.title = "lagrange -> euler";
  record(out.report, worst, tolerance);
  return out;
}

LagrangeFromEuler euler_to_lagrange(const EulerFieldState& state, const BarotropicFluid& fluid, double tolerance) {
  LagrangeFromEuler out;
  Grid1D target;
  GridField x = invert_periodic_map(state.grid, state.y, &target);
  out.lagrange = {target, x};

  const int n = state.grid.n;
  const auto y_x = TrigInterpolant(state.y.value, state.grid.origin, state.grid.h, state.y.jump).node_derivative();
  std::vector<double> Th0(n), Th1(n), t01(n), t11(n);
  for (int i = 0; i < n; ++i) {
    const auto pt = euler_point(state.y.rate[i], y_x[i], fluid);
    Th0[i] = pt.Theta[0];
    Th1[i] = pt.Theta[1];
    t01[i] = pt.t[0][1];
    t11[i] = pt.t[1][1];
  }
  const auto x_y = TrigInterpolant(x.value, target.origin, target.h, x.jump).node_derivative();
  std::array<double, 4> worst{};
  const auto& g = state.grid;
  const TrigInterpolant iTh0(Th0, g.origin, g.h), iTh1(Th1, g.origin, g.h), it01(t01, g.origin, g.h),
      it11(t11, g.origin, g.h);
  for (int j = 0; j < target.n; ++j) {
    const auto l = lagrange_point(x_y[j], x.rate[j], fluid);
    const double s = x.value[j];
    EulerPoint<double> e{};
    e.Theta = {iTh0(s), iTh1(s)};
    e.t[0][1] = it01(s);
    e.t[1][1] = it11(s);
    const auto sides = cross_identities(1.0 / l.V, l.v, 1.0 / x_y[j], e, l.P[0], l.P[1], l.T[0][1], l.T[1][1]);
    for (int k = 0; k < 4; ++k) worst[k] = std::max(worst[k], std::abs(sides.lhs[k] - sides.rhs[k]));
  }
  out.report.title = "euler -> lagrange";
  record(out.report, worst, tolerance);
  return out;
}

DiagnosticReport rest_frame_correspondence(const EulerFieldState& state, const BarotropicFluid& fluid,
                                           double tolerance) {
  const auto y_x = derivative(state.grid, state.y.value, state.y.jump);
  std::array<double, 4> worst{};
  for (int i = 0; i < state.grid.n; ++i) {
    const auto e = euler_point(state.y.rate[i], y_x[i], fluid);
    if (std::abs(e.v) > 1e-12) throw std::invalid_argument("rest-frame correspondence needs v = 0");
    const auto l = lagrange_point(1.0 / y_x[i], e.v, fluid);
    const std::array<double, 4> gaps{
        l.P[1] + e.V * y_x[i] * e.t[1][1],
        e.Theta[1] + e.rho * l.V * l.T[1][1],
        l.P[0] + e.V * e.t[0][1],
        e.Theta[0] + e.rho * l.T[0][1],
    };
    for (int k = 0; k < 4; ++k) worst[k] = std::max(worst[k], std::abs(gaps[k]));
  }
  DiagnosticReport r;
  r.title = "rest-frame correspondence";
  r.add("Pa_k + V y_x t1_k", worst[0], tolerance);
  r.add("Theta1_a + rho x_y T1_a", worst[1], tolerance);
  r.add("P0_k + V t0_k", worst[2], tolerance);
  r.add("Theta0_a + rho T0_a", worst[3], tolerance);
  return r;
}

}  // namespace fieldflow
