#include "fieldflow/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <cstdio>
#include <string>

namespace fieldflow {

HamiltonianPoint hamiltonian_point(double tau_x, double y_x, double pi0, double pi1, const CanonicalFluid& fluid) {
  if (!(y_x > 0.0)) throw ConfigurationError("density y_x = " + std::to_string(y_x) + " is not positive");
  const double M = fluid.constants.molar_mass;
  const double beta = fluid.constants.beta;
  HamiltonianPoint h;
  h.rho = y_x;
  h.V = 1.0 / y_x;
  h.s = fluid.model.thermal() ? pi0 / (beta * h.rho) : 0.0;
  h.v = -(pi0 * tau_x + pi1 * y_x) / (h.rho * M);
  const auto c = fluid.model.at(h.V, h.s);
  h.e = c.e;
  h.T = c.T;
  h.p = c.p;
  h.f = c.f;
  const double kinetic = 0.5 * M * h.v * h.v;
  h.H = h.rho * (kinetic + h.e);
  h.dH_dpi0 = -h.v * tau_x + h.T / beta;
  h.dH_dpi1 = -h.v * y_x;
  h.dH_dtau_x = -h.v * pi0;
  h.dH_dy_x = h.f + h.p * h.V - kinetic - h.v * pi1;
  return h;
}

CanonicalState to_canonical(const ThermoFieldState& state, const ThermalFluid& fluid, double time) {
  CanonicalState cs;
  cs.grid = state.grid;
  cs.tau = state.tau.value;
  cs.y = state.y.value;
  cs.tau_jump = state.tau.jump;
  cs.y_jump = state.y.jump;
  cs.time = time;
  const auto tau_x = derivative(state.grid, state.tau.value, state.tau.jump);
  const auto y_x = derivative(state.grid, state.y.value, state.y.jump);
  cs.pi0.resize(state.grid.n);
  cs.pi1.resize(state.grid.n);
  for (int i = 0; i < state.grid.n; ++i) {
    const auto pt = thermo_point(state.tau.rate[i], tau_x[i], state.y.rate[i], y_x[i], fluid);
    cs.pi0[i] = pt.Theta[0][0];
    cs.pi1[i] = pt.Theta[0][1];
  }
  return cs;
}

CanonicalState to_canonical(const EulerFieldState& state, const BarotropicFluid& fluid, double time) {
  CanonicalState cs;
  cs.grid = state.grid;
  cs.y = state.y.value;
  cs.y_jump = state.y.jump;
  cs.tau.assign(state.grid.n, 0.0);
  cs.pi0.assign(state.grid.n, 0.0);
  cs.time = time;
  const auto y_x = derivative(state.grid, state.y.value, state.y.jump);
  cs.pi1.resize(state.grid.n);
  for (int i = 0; i < state.grid.n; ++i) cs.pi1[i] = euler_point(state.y.rate[i], y_x[i], fluid).Theta[0];
  return cs;
}

namespace {

struct PointArrays {
  std::vector<HamiltonianPoint> pts;
  std::vector<double> tau_x, y_x;
};

PointArrays points(const CanonicalState& cs, const CanonicalFluid& fluid) {
  PointArrays a;
  a.tau_x = derivative(cs.grid, cs.tau, cs.tau_jump);
  a.y_x = derivative(cs.grid, cs.y, cs.y_jump);
  a.pts.reserve(cs.grid.n);
  for (int i = 0; i < cs.grid.n; ++i) {
    a.pts.push_back(hamiltonian_point(a.tau_x[i], a.y_x[i], cs.pi0[i], cs.pi1[i], fluid));
  }
  return a;
}

const DirichletControl& control_of(const CanonicalState& cs) {
  if (!cs.control) throw std::invalid_argument("Dirichlet grid needs boundary control data");
  return *cs.control;
}

}  // namespace

std::vector<double> variational_transpose(const Grid1D& grid, const std::vector<double>& g) {
  const int n = grid.n;
  const auto w = quadrature_weights(grid);
  std::vector<double> acc(n, 0.0);
  const double c = 0.5 / grid.h;
  auto add = [&](int i, int j, double coeff) { acc[j] += w[i] * g[i] * coeff; };
  for (int i = 1; i + 1 < n; ++i) {
    add(i, i + 1, c);
    add(i, i - 1, -c);
  }
  if (grid.is_periodic()) {
    add(0, 1, c);
    add(0, n - 1, -c);
    add(n - 1, 0, c);
    add(n - 1, n - 2, -c);
  } else {
    add(0, 0, -3.0 * c);
    add(0, 1, 4.0 * c);
    add(0, 2, -c);
    add(n - 1, n - 1, 3.0 * c);
    add(n - 1, n - 2, -4.0 * c);
    add(n - 1, n - 3, c);
  }
  for (int j = 0; j < n; ++j) acc[j] /= w[j];
  return acc;
}

ThermoFieldState from_canonical(const CanonicalState& cs, const CanonicalFluid& fluid) {
  const auto rates = hamilton_rhs(cs, fluid);
  ThermoFieldState s;
  s.grid = cs.grid;
  s.tau = {cs.tau, rates.tau, cs.tau_jump};
  s.y = {cs.y, rates.y, cs.y_jump};
  return s;
}

Observables recover_observables(const CanonicalState& cs, const CanonicalFluid& fluid) {
  const auto a = points(cs, fluid);
  Observables o;
  for (const auto& p : a.pts) {
    if (fluid.model.thermal() && !(p.T > 0.0)) throw DomainError("recovered temperature is not positive");
    o.rho.push_back(p.rho);
    o.v.push_back(p.v);
    o.s.push_back(p.s);
    o.T.push_back(p.T);
    o.H.push_back(p.H);
    o.p.push_back(p.p);
    o.e.push_back(p.e);
  }
  return o;
}

HamiltonianDensityEval evaluate_hamiltonian(const CanonicalState& cs, const CanonicalFluid& fluid) {
  const auto a = points(cs, fluid);
  const int n = cs.grid.n;
  HamiltonianDensityEval ev;
  std::vector<double> g0(n), g1(n);
  for (int i = 0; i < n; ++i) {
    ev.H.push_back(a.pts[i].H);
    ev.dH_dpi0.push_back(a.pts[i].dH_dpi0);
    ev.dH_dpi1.push_back(a.pts[i].dH_dpi1);
    g0[i] = a.pts[i].dH_dtau_x;
    g1[i] = a.pts[i].dH_dy_x;
  }
  ev.dH_dz0 = variational_transpose(cs.grid, g0);
  ev.dH_dz1 = variational_transpose(cs.grid, g1);
  return ev;
}

CanonicalRates hamilton_rhs(const CanonicalState& cs, const CanonicalFluid& fluid) {
  const auto a = points(cs, fluid);
  const int n = cs.grid.n;
  CanonicalRates r;
  std::vector<double> g0(n), g1(n);
  r.tau.resize(n);
  r.y.resize(n);
  for (int i = 0; i < n; ++i) {
    r.tau[i] = a.pts[i].dH_dpi0;
    r.y[i] = a.pts[i].dH_dpi1;
    g0[i] = a.pts[i].dH_dtau_x;
    g1[i] = a.pts[i].dH_dy_x;
  }
  r.pi0 = derivative(cs.grid, g0);
  r.pi1 = derivative(cs.grid, g1);
  if (!cs.grid.is_periodic()) {
    const auto& c = control_of(cs);
    const double beta = fluid.constants.beta;
    r.tau[0] = c.T_left / beta;
    r.tau[n - 1] = c.T_right / beta;
    for (int i : {0, n - 1}) {
      r.y[i] = 0.0;
      r.pi0[i] = 0.0;
      r.pi1[i] = 0.0;
    }
  }
  return r;
}

DiagnosticReport explicit_rates_audit(const CanonicalState& cs, const CanonicalFluid& fluid) {
  const auto a = points(cs, fluid);
  const auto rates = hamilton_rhs(cs, fluid);
  const int n = cs.grid.n;
  const double beta = fluid.constants.beta;
  const double M = fluid.constants.molar_mass;
  std::vector<double> flux0(n), flux1(n);
  for (int i = 0; i < n; ++i) {
    const auto& p = a.pts[i];
    flux0[i] = beta * p.s * p.v;
    const double x_y = 1.0 / a.y_x[i];
    flux1[i] = p.rho * x_y * (p.f + p.p * p.V - 0.5 * M * p.v * p.v - p.v * cs.pi1[i]);
  }
  const auto pidot0 = derivative(cs.grid, flux0);
  const auto pidot1 = derivative(cs.grid, flux1);
  double d_tau = 0.0, d_y = 0.0, d_pi0 = 0.0, d_pi1 = 0.0;
  const int lo = cs.grid.is_periodic() ? 0 : 1;
  const int hi = cs.grid.is_periodic() ? n : n - 1;
  for (int i = lo; i < hi; ++i) {
    const auto& p = a.pts[i];
    const double ztau = -(1.0 / p.rho) * a.tau_x[i] * p.v + p.T / (beta * p.rho);
    const double zy = -(1.0 / p.rho) * a.y_x[i] * p.v;
    d_tau = std::max(d_tau, std::abs(ztau - rates.tau[i]));
    d_y = std::max(d_y, std::abs(zy - rates.y[i]));
    d_pi0 = std::max(d_pi0, std::abs(-pidot0[i] - rates.pi0[i]));
    d_pi1 = std::max(d_pi1, std::abs(pidot1[i] - rates.pi1[i]));
  }
  DiagnosticReport r;
  r.title = "expanded rate formulas vs generating relation";
  r.note("tau rate with 1/rho factors", d_tau);
  r.note("y rate with 1/rho factor", d_y);
  r.note("pi0 rate -d_x(beta s v)", d_pi0);
  r.note("pi1 rate d_x[rho x_y (f + pV - Mv^2/2 - v pi1)]", d_pi1);
  return r;
}

double max_stable_dt(const CanonicalState& cs, const CanonicalFluid& fluid) {
  const auto a = points(cs, fluid);
  double speed = 0.0;
  for (const auto& p : a.pts) {
    const double c2 = fluid.model.sound_speed_squared(p.V, p.s, fluid.constants.molar_mass);
    speed = std::max(speed, std::abs(p.v) + std::sqrt(std::max(c2, 0.0)));
  }
  const double bound = 2.0 * speed;
  if (!(bound > 0.0)) return cs.grid.h;
  return cs.grid.h / (2.0 * bound);
}

void check_state(const CanonicalState& cs, const CanonicalFluid& fluid) {
  for (const auto* v : {&cs.tau, &cs.y, &cs.pi0, &cs.pi1}) {
    if (static_cast<int>(v->size()) != cs.grid.n) throw InvariantViolation("field size does not match grid");
    for (double x : *v) {
      if (!std::isfinite(x)) throw InvariantViolation("non-finite field value");
    }
  }
  const auto y_x = derivative(cs.grid, cs.y, cs.y_jump);
  for (int i = 0; i < cs.grid.n; ++i) {
    if (!(y_x[i] > 0.0)) {
      throw ConfigurationError("fluid folded: y_x = " + std::to_string(y_x[i]) + " at node " + std::to_string(i));
    }
  }
  recover_observables(cs, fluid);
  if (!cs.grid.is_periodic()) {
    const auto& c = control_of(cs);
    const double beta = fluid.constants.beta;
    const int n = cs.grid.n;
    if (cs.y[0] != c.y_left || cs.y[n - 1] != c.y_right || cs.tau[0] != c.tau_at_left(cs.time, beta) ||
        cs.tau[n - 1] != c.tau_at_right(cs.time, beta)) {
      throw InvariantViolation("boundary values drifted from the control data");
    }
  }
}

namespace {

using Vec = std::vector<double>;

void axpy(Vec& out, const Vec& x, double a, const Vec& k) {
  out.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + a * k[i];
}

CanonicalState advance(const CanonicalState& cs, double a, const CanonicalRates& k) {
  CanonicalState r = cs;
  axpy(r.tau, cs.tau, a, k.tau);
  axpy(r.y, cs.y, a, k.y);
  axpy(r.pi0, cs.pi0, a, k.pi0);
  axpy(r.pi1, cs.pi1, a, k.pi1);
  r.time = cs.time + a;
  return r;
}

double max_abs_rates(const CanonicalRates& k) {
  double m = 0.0;
  for (const auto* v : {&k.tau, &k.y, &k.pi0, &k.pi1})
    for (double x : *v) m = std::max(m, std::abs(x));
  return m;
}

double max_diff(const CanonicalRates& a, const CanonicalRates& b) {
  double m = 0.0;
  const std::array<std::pair<const Vec*, const Vec*>, 4> pairs{
      {{&a.tau, &b.tau}, {&a.y, &b.y}, {&a.pi0, &b.pi0}, {&a.pi1, &b.pi1}}};
  for (const auto& [u, w] : pairs)
    for (std::size_t i = 0; i < u->size(); ++i) m = std::max(m, std::abs((*u)[i] - (*w)[i]));
  return m;
}

void pin_boundary(CanonicalState& s, const CanonicalFluid& fluid) {
  if (s.grid.is_periodic()) return;
  const auto& c = control_of(s);
  const double beta = fluid.constants.beta;
  const int n = s.grid.n;
  s.y[0] = c.y_left;
  s.y[n - 1] = c.y_right;
  s.tau[0] = c.tau_at_left(s.time, beta);
  s.tau[n - 1] = c.tau_at_right(s.time, beta);
  // Boundary momenta follow from the pinned motion (v = 0, T = T_b): pi0 = beta rho s, pi1 = -beta s tau_x.
  const auto* eos = std::get_if<ThermalEos>(&fluid.model.eos());
  const auto tau_x = derivative(s.grid, s.tau);
  const auto y_x = derivative(s.grid, s.y);
  for (const auto& [i, T] : {std::pair{0, c.T_left}, std::pair{n - 1, c.T_right}}) {
    const double entropy = eos ? thermal_response(*eos, 1.0 / y_x[i], T).s : 0.0;
    s.pi0[i] = beta * y_x[i] * entropy;
    s.pi1[i] = -beta * entropy * tau_x[i];
  }
}

}  // namespace

CanonicalState step(const CanonicalState& cs, const CanonicalFluid& fluid, double dt, Scheme scheme,
                    const StepOptions& options, StepStats* stats) {
  if (dt == 0.0) return cs;
  if (!std::isfinite(dt)) throw std::invalid_argument("time step must be finite");
  if (options.cfl_guard) {
    const double limit = max_stable_dt(cs, fluid);
    if (std::abs(dt) > limit) {
      throw std::invalid_argument("time step " + std::to_string(dt) + " exceeds the CFL guard " +
                                  std::to_string(limit));
    }
  }
  CanonicalState next;
  if (scheme == Scheme::rk4) {
    const auto k1 = hamilton_rhs(cs, fluid);
    const auto k2 = hamilton_rhs(advance(cs, 0.5 * dt, k1), fluid);
    const auto k3 = hamilton_rhs(advance(cs, 0.5 * dt, k2), fluid);
    const auto k4 = hamilton_rhs(advance(cs, dt, k3), fluid);
    CanonicalRates k;
    for (Vec CanonicalRates::*m : {&CanonicalRates::tau, &CanonicalRates::y, &CanonicalRates::pi0, &CanonicalRates::pi1}) {
      auto& out = k.*m;
      out.resize((k1.*m).size());
      for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = ((k1.*m)[i] + 2.0 * (k2.*m)[i] + 2.0 * (k3.*m)[i] + (k4.*m)[i]) / 6.0;
      }
    }
    next = advance(cs, dt, k);
    if (stats) *stats = {4, 0.0};
  } else {
    // Y = X + dt f((X + Y) / 2), iterated on the stage rate K = f(X + dt K / 2).
    CanonicalRates k = hamilton_rhs(cs, fluid);
    int it = 0;
    double change = 0.0;
    double previous_change = std::numeric_limits<double>::infinity();
    bool converged = false;
    for (it = 1; it <= options.max_iterations; ++it) {
      CanonicalRates k_new = hamilton_rhs(advance(cs, 0.5 * dt, k), fluid);
      change = max_diff(k_new, k);
      k = std::move(k_new);
      const double bound = options.tolerance * std::max(1.0, max_abs_rates(k));
      // A change that no longer contracts is the roundoff floor; accept it if close to the bound.
      if (change <= bound || (change >= 0.5 * previous_change && change <= 100.0 * bound)) {
        converged = true;
        break;
      }
      previous_change = change;
    }
    if (!converged) {
      char msg[160];
      std::snprintf(msg, sizeof msg, "implicit midpoint stage did not converge in %d iterations (last change %.3e)",
                    options.max_iterations, change);
      throw ConvergenceError(msg);
    }
    next = advance(cs, dt, k);
    if (stats) *stats = {it, change};
  }
  next.time = cs.time + dt;
  pin_boundary(next, fluid);
  check_state(next, fluid);
  return next;
}

CanonicalState midpoint_state(const CanonicalState& a, const CanonicalState& b) {
  if (a.grid.n != b.grid.n) throw std::invalid_argument("midpoint_state: grids differ");
  CanonicalState m = a;
  auto avg = [](std::vector<double>& out, const std::vector<double>& other) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = 0.5 * (out[i] + other[i]);
  };
  avg(m.tau, b.tau);
  avg(m.y, b.y);
  avg(m.pi0, b.pi0);
  avg(m.pi1, b.pi1);
  m.tau_jump = 0.5 * (a.tau_jump + b.tau_jump);
  m.y_jump = 0.5 * (a.y_jump + b.y_jump);
  m.time = 0.5 * (a.time + b.time);
  return m;
}

History<ThermoFieldState> midpoint_history(const CanonicalState& previous, const CanonicalState& current,
                                           const CanonicalState& next, const CanonicalFluid& fluid) {
  const double dt = next.time - current.time;
  return {from_canonical(midpoint_state(previous, current), fluid), from_canonical(current, fluid),
          from_canonical(midpoint_state(current, next), fluid), dt};
}

double total_hamiltonian(const CanonicalState& cs, const CanonicalFluid& fluid) {
  return total_hamiltonian(cs, fluid, NodeRange{0, cs.grid.n});
}

double total_hamiltonian(const CanonicalState& cs, const CanonicalFluid& fluid, NodeRange range) {
  const auto a = points(cs, fluid);
  std::vector<double> H;
  H.reserve(a.pts.size());
  for (const auto& p : a.pts) H.push_back(p.H);
  return integrate(cs.grid, H, range);
}

double neumann_hamiltonian(const CanonicalState& cs, const CanonicalFluid& fluid) {
  const double HD = total_hamiltonian(cs, fluid);
  if (cs.grid.is_periodic()) return HD;
  const auto a = points(cs, fluid);
  const int n = cs.grid.n;
  auto boundary = [&](int i) {
    const double theta0 = -a.pts[i].dH_dtau_x;
    const double theta1 = -a.pts[i].dH_dy_x;
    return theta0 * cs.tau[i] + theta1 * cs.y[i];
  };
  return HD - (boundary(n - 1) - boundary(0));
}

Totals totals(const CanonicalState& cs, const CanonicalFluid& fluid) {
  const auto a = points(cs, fluid);
  const int n = cs.grid.n;
  std::vector<double> H(n), rho(n), rho_s(n), mom(n);
  for (int i = 0; i < n; ++i) {
    const auto& p = a.pts[i];
    H[i] = p.H;
    rho[i] = p.rho;
    rho_s[i] = p.rho * p.s;
    mom[i] = p.rho * fluid.constants.molar_mass * p.v;
  }
  return {integrate(cs.grid, H), integrate(cs.grid, rho), integrate(cs.grid, rho_s), integrate(cs.grid, mom)};
}

DiagnosticReport rest_frame_reduction(const CanonicalState& cs, const CanonicalFluid& fluid, double probe,
                                      double tolerance) {
  const auto a = points(cs, fluid);
  for (const auto& p : a.pts) {
    if (std::abs(p.v) > 1e-12) throw std::invalid_argument("rest-frame reduction needs v = 0 everywhere");
  }
  const double beta = fluid.constants.beta;
  DiagnosticReport r;
  r.title = "delta(rho e) = T delta(rho s) + (e - T s + p/rho) delta rho";
  if (probe == 0.0) {
    r.add("zero probe", 0.0, tolerance);
    return r;
  }
  const std::array<std::array<double, 2>, 3> directions{{{1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}}};
  std::array<double, 3> worst{};
  for (int i = 0; i < cs.grid.n; ++i) {
    const auto& c = a.pts[i];
    for (int d = 0; d < 3; ++d) {
      const double dpi0 = probe * directions[d][0];
      const double dyx = probe * directions[d][1];
      const auto plus = hamiltonian_point(a.tau_x[i], a.y_x[i] + dyx, cs.pi0[i] + dpi0, cs.pi1[i], fluid);
      const auto minus = hamiltonian_point(a.tau_x[i], a.y_x[i] - dyx, cs.pi0[i] - dpi0, cs.pi1[i], fluid);
      const double lhs = 0.5 * (plus.H - minus.H);
      const double d_rho_s = fluid.model.thermal() ? dpi0 / beta : 0.0;
      const double rhs = c.T * d_rho_s + (c.e - c.T * c.s + c.p / c.rho) * dyx;
      worst[d] = std::max(worst[d], std::abs(lhs - rhs) / probe);
    }
  }
  r.add("probe delta pi0", worst[0], tolerance);
  r.add("probe delta y_x", worst[1], tolerance);
  r.add("probe delta pi0 + delta y_x", worst[2], tolerance);
  return r;
}

}  // namespace fieldflow
