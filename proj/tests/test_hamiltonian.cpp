#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fieldflow/config.hpp"
#include "fieldflow/diagnostics.hpp"
#include "fieldflow/hamiltonian.hpp"
#include "fieldflow/scenario.hpp"

using namespace fieldflow;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

ThermalFluid gas() { return {ThermalEos::ideal_gas(1.0, 1.5), {1.0, 1.0, 1.0}}; }

// Smooth periodic state: density wave, small velocity, nonuniform temperature and a tilted clock.
ThermoFieldState wave_state(int n, double amp = 0.05) {
  const auto g = Grid1D::periodic(n, 1.0);
  ThermoFieldState s{g, {}, {}};
  s.y = {std::vector<double>(n), std::vector<double>(n), 1.0};
  s.tau = {std::vector<double>(n), std::vector<double>(n), 0.0};
  for (int i = 0; i < n; ++i) {
    const double x = g.x(i);
    const double y_x = 1.0 + amp * std::cos(kTwoPi * x);
    const double v = 0.1 * std::sin(kTwoPi * x);
    const double tau_x = 0.05 * std::cos(kTwoPi * x);
    const double T = 1.0 + 0.1 * std::sin(kTwoPi * x);
    s.y.value[i] = x + amp * std::sin(kTwoPi * x) / kTwoPi;
    s.y.rate[i] = -v * y_x;
    s.tau.value[i] = 0.05 * std::sin(kTwoPi * x) / kTwoPi;
    s.tau.rate[i] = T - v * tau_x;
  }
  return s;
}

double max_gap(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("Hamiltonian density and its partials") {
  const auto fluid = CanonicalFluid::from(gas());
  const double tau_x = 0.1, y_x = 1.2, pi0 = 0.3, pi1 = -0.4;
  const auto h = hamiltonian_point(tau_x, y_x, pi0, pi1, fluid);
  // Oracle: s = pi0 / (beta rho), M v = -(pi0 tau_x + pi1 y_x) / rho, ideal gas e(V, s).
  const double rho = y_x, s = pi0 / rho, v = -(pi0 * tau_x + pi1 * y_x) / rho;
  const double T = std::exp((s - std::log(1.0 / rho)) / 1.5);
  CHECK(h.s == doctest::Approx(s).epsilon(1e-14));
  CHECK(h.v == doctest::Approx(v).epsilon(1e-14));
  CHECK(h.T == doctest::Approx(T).epsilon(1e-12));
  CHECK(h.H == doctest::Approx(rho * (0.5 * v * v + 1.5 * T)).epsilon(1e-12));
  const double eps = 1e-6;
  auto H = [&](double a, double b, double c, double d) { return hamiltonian_point(a, b, c, d, fluid).H; };
  CHECK(h.dH_dtau_x == doctest::Approx((H(tau_x + eps, y_x, pi0, pi1) - H(tau_x - eps, y_x, pi0, pi1)) / (2 * eps)).epsilon(1e-8));
  CHECK(h.dH_dy_x == doctest::Approx((H(tau_x, y_x + eps, pi0, pi1) - H(tau_x, y_x - eps, pi0, pi1)) / (2 * eps)).epsilon(1e-8));
  CHECK(h.dH_dpi0 == doctest::Approx((H(tau_x, y_x, pi0 + eps, pi1) - H(tau_x, y_x, pi0 - eps, pi1)) / (2 * eps)).epsilon(1e-8));
  CHECK(h.dH_dpi1 == doctest::Approx((H(tau_x, y_x, pi0, pi1 + eps) - H(tau_x, y_x, pi0, pi1 - eps)) / (2 * eps)).epsilon(1e-8));
}

TEST_CASE("Legendre map round trip") {
  const auto th = gas();
  const auto state = wave_state(64);
  const auto cs = to_canonical(state, th);
  const auto back = from_canonical(cs, CanonicalFluid::from(th));
  CHECK(max_gap(back.y.rate, state.y.rate) < 1e-12);
  CHECK(max_gap(back.tau.rate, state.tau.rate) < 1e-12);
  const auto obs = recover_observables(cs, CanonicalFluid::from(th));
  // T = taudot + v tau_x with the discrete gradients the canonical state carries.
  const auto Dtau = derivative(state.grid, state.tau.value, state.tau.jump);
  const auto Dy = derivative(state.grid, state.y.value, state.y.jump);
  for (int i = 0; i < 64; ++i) {
    const double v = -state.y.rate[i] / Dy[i];
    CHECK(obs.T[i] == doctest::Approx(state.tau.rate[i] + v * Dtau[i]).epsilon(1e-12));
    CHECK(obs.T[i] == doctest::Approx(1.0 + 0.1 * std::sin(kTwoPi * i / 64.0)).epsilon(1e-4));
  }
}

TEST_CASE("periodic variational transpose is minus the derivative") {
  const auto g = Grid1D::periodic(32, 1.0);
  std::vector<double> f(32);
  for (int i = 0; i < 32; ++i) f[i] = std::sin(kTwoPi * g.x(i)) + 0.2 * std::cos(3.0 * kTwoPi * g.x(i));
  const auto t = variational_transpose(g, f);
  const auto d = derivative(g, f);
  for (int i = 0; i < 32; ++i) CHECK(std::abs(t[i] + d[i]) < 1e-12);
}

TEST_CASE("hamilton_rhs field rates equal dH/dpi") {
  const auto th = gas();
  const auto fluid = CanonicalFluid::from(th);
  const auto cs = to_canonical(wave_state(64), th);
  const auto rhs = hamilton_rhs(cs, fluid);
  const auto ev = evaluate_hamiltonian(cs, fluid);
  CHECK(max_gap(rhs.tau, ev.dH_dpi0) < 1e-14);
  CHECK(max_gap(rhs.y, ev.dH_dpi1) < 1e-14);
  // On periodic grids pidot = -dH_D/dz.
  for (int i = 0; i < 64; ++i) {
    CHECK(std::abs(rhs.pi0[i] + ev.dH_dz0[i]) < 1e-12);
    CHECK(std::abs(rhs.pi1[i] + ev.dH_dz1[i]) < 1e-12);
  }
  CHECK(explicit_rates_audit(cs, fluid).entries.size() > 0);
}

TEST_CASE("implicit midpoint conserves H_D, mass and entropy") {
  const auto th = gas();
  const auto fluid = CanonicalFluid::from(th);
  auto cs = to_canonical(wave_state(64), th);
  const auto t0 = totals(cs, fluid);
  CHECK(neumann_hamiltonian(cs, fluid) == doctest::Approx(t0.H_D).epsilon(1e-15));
  for (int k = 0; k < 200; ++k) cs = step(cs, fluid, 1e-3, Scheme::implicit_midpoint);
  const auto t1 = totals(cs, fluid);
  // H_D is not quadratic, so midpoint keeps it to O(dt^2) without drift.
  CHECK(std::abs(t1.H_D - t0.H_D) / t0.H_D < 1e-9);
  CHECK(std::abs(t1.mass - t0.mass) < 1e-12);
  CHECK(std::abs(t1.entropy - t0.entropy) < 1e-12);
  // Only shifts by whole cells are symmetries of the discrete H_D; the
  // momentum integral changes at truncation level.
  CHECK(std::abs(t1.momentum - t0.momentum) < 1e-5);
  double sum0 = 0.0, sum1 = 0.0;
  for (int i = 0; i < cs.grid.n; ++i) {
    sum1 += cs.pi1[i];
    sum0 += cs.pi0[i];
  }
  const auto start = to_canonical(wave_state(64), th);
  for (int i = 0; i < cs.grid.n; ++i) {
    sum1 -= start.pi1[i];
    sum0 -= start.pi0[i];
  }
  // Gauge shifts z -> z + c are exact symmetries: total conjugate momenta are kept.
  CHECK(std::abs(sum0) < 1e-11);
  CHECK(std::abs(sum1) < 1e-11);
  CHECK(cs.time == doctest::Approx(0.2));
}

TEST_CASE("implicit midpoint is time-symmetric and agrees with RK4") {
  const auto th = gas();
  const auto fluid = CanonicalFluid::from(th);
  const auto cs = to_canonical(wave_state(32), th);
  const auto fwd = step(cs, fluid, 2e-3, Scheme::implicit_midpoint);
  const auto back = step(fwd, fluid, -2e-3, Scheme::implicit_midpoint);
  CHECK(max_gap(back.y, cs.y) < 1e-12);
  CHECK(max_gap(back.pi1, cs.pi1) < 1e-12);
  const auto rk = step(cs, fluid, 2e-3, Scheme::rk4);
  CHECK(max_gap(rk.y, fwd.y) < 1e-7);
  CHECK(max_gap(rk.pi0, fwd.pi0) < 1e-7);
  const auto same = step(cs, fluid, 0.0, Scheme::implicit_midpoint);
  CHECK(same.y == cs.y);
  CHECK_THROWS_AS(step(cs, fluid, 1.0, Scheme::implicit_midpoint), std::invalid_argument);
  CHECK(max_stable_dt(cs, fluid) > 1e-3);
}

TEST_CASE("nonconvergent implicit stage is reported") {
  const auto th = gas();
  const auto fluid = CanonicalFluid::from(th);
  const auto cs = to_canonical(wave_state(32), th);
  StepOptions opt;
  opt.max_iterations = 1;
  opt.tolerance = 1e-16;
  CHECK_THROWS_AS(step(cs, fluid, 2e-3, Scheme::implicit_midpoint, opt), ConvergenceError);
}

TEST_CASE("folded or non-finite states are rejected") {
  const auto th = gas();
  const auto fluid = CanonicalFluid::from(th);
  auto cs = to_canonical(wave_state(32), th);
  auto folded = cs;
  folded.y[5] = folded.y[7] + 0.1;
  CHECK_THROWS_AS(recover_observables(folded, fluid), ConfigurationError);
  auto nan = cs;
  nan.pi1[3] = std::nan("");
  CHECK_THROWS(check_state(nan, fluid));
}

TEST_CASE("barotropic runs keep pi0 at zero") {
  const BarotropicFluid baro{BarotropicEos::polytrope(1.0, 2.0), {1.0, 1.0, 1.0}};
  const auto fluid = CanonicalFluid::from(baro);
  const auto wave = wave_state(32);
  auto cs = to_canonical(EulerFieldState{wave.grid, wave.y}, baro);
  for (int k = 0; k < 20; ++k) cs = step(cs, fluid, 1e-3, Scheme::implicit_midpoint);
  for (double p : cs.pi0) CHECK(p == 0.0);
  for (double r : hamilton_rhs(cs, fluid).tau) CHECK(r == 0.0);
}

TEST_CASE("dirichlet thermal bath keeps pinned boundary values exact") {
  ScenarioConfig cfg;
  cfg.grid = {64, 1.0, Boundary::dirichlet};
  cfg.initial.profile = Profile::thermal_bath;
  cfg.initial.T_left = 1.0;
  cfg.initial.T_right = 1.2;
  const auto model = build_model(cfg);
  auto cs = initial_state(cfg, model);
  REQUIRE(cs.control.has_value());
  const double y0 = cs.y.front(), y1 = cs.y.back();
  for (int k = 0; k < 50; ++k) {
    cs = step(cs, model.fluid, 1e-3, Scheme::implicit_midpoint);
    CHECK(cs.y.front() == y0);
    CHECK(cs.y.back() == y1);
    CHECK(cs.tau.front() == cs.control->tau_at_left(cs.time, 1.0));
    CHECK(cs.tau.back() == cs.control->tau_at_right(cs.time, 1.0));
  }
  const auto obs = recover_observables(cs, model.fluid);
  CHECK(obs.T.front() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(obs.T.back() == doctest::Approx(1.2).epsilon(1e-12));
  CHECK(std::abs(obs.v.front()) < 1e-14);
  auto broken = cs;
  broken.control.reset();
  CHECK_THROWS(check_state(broken, model.fluid));
}

TEST_CASE("rest-frame reduction to de = T ds + (e - Ts + p/rho) drho") {
  const auto th = gas();
  auto state = wave_state(32);
  for (int i = 0; i < 32; ++i) state.y.rate[i] = 0.0;
  state.tau.value.assign(32, 0.0);
  for (int i = 0; i < 32; ++i) state.tau.rate[i] = 1.0 + 0.1 * std::sin(kTwoPi * i / 32.0);
  const auto cs = to_canonical(state, th);
  const auto report = rest_frame_reduction(cs, CanonicalFluid::from(th));
  CHECK(report.passed());
  CHECK(report.max_value() <= 1e-6);
  CHECK_THROWS_AS(rest_frame_reduction(to_canonical(wave_state(32), th), CanonicalFluid::from(th)),
                  std::invalid_argument);
}

TEST_CASE("midpoint history carries rates from the Hamiltonian") {
  const auto th = gas();
  const auto fluid = CanonicalFluid::from(th);
  const auto a = to_canonical(wave_state(32), th);
  const auto b = step(a, fluid, 1e-3, Scheme::implicit_midpoint);
  const auto c = step(b, fluid, 1e-3, Scheme::implicit_midpoint);
  const auto h = midpoint_history(a, b, c, fluid);
  CHECK(h.dt == doctest::Approx(1e-3));
  const auto mid = midpoint_state(a, b);
  CHECK(max_gap(h.previous.y.rate, hamilton_rhs(mid, fluid).y) < 1e-14);
  CHECK(mid.time == doctest::Approx(0.5e-3));
}
