#include <doctest.h>

#include <cmath>
#include <random>

#include "fieldflow/barotropic.hpp"
#include "fieldflow/diagnostics.hpp"

using namespace fieldflow;

namespace {

BarotropicFluid polytrope() { return {BarotropicEos::polytrope(1.0, 2.0), {1.3, 1.0, 1.0}}; }

double table_gap(const Tensor2<double>& a, const Tensor2<double>& b) {
  double m = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m = std::max(m, std::abs(a[i][j] - b[i][j]));
  return m;
}

template <class State>
History<State> levels(const SmoothField& f, int n, double t) {
  const auto g = Grid1D::periodic(n, 1.0);
  const double dt = 0.5 * g.h;
  return {{g, sample(f, g, t - dt)}, {g, sample(f, g, t)}, {g, sample(f, g, t + dt)}, dt};
}

}  // namespace

TEST_CASE("component tables equal the defining contractions") {
  const auto fluid = polytrope();
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.5, 2.0), w(-1.0, 1.0);
  for (int k = 0; k < 100; ++k) {
    const double x_y = u(rng), v = w(rng);
    const auto l = lagrange_point(x_y, v, fluid);
    CHECK(table_gap(l.T, lagrange_contraction(l, x_y)) < 1e-12);
    CHECK(table_gap(lagrange_tensor(x_y, v, fluid).c, l.T) == 0.0);
    const double y_x = u(rng), y_t = w(rng);
    const auto e = euler_point(y_t, y_x, fluid);
    CHECK(table_gap(e.t, euler_contraction(e, y_t, y_x)) < 1e-12);
    CHECK(euler_tensor(y_t, y_x, fluid).picture == Picture::euler);
    // Energy density is rho (M v^2 / 2 + e).
    CHECK(std::abs(e.t[0][0] - y_x * (0.5 * 1.3 * e.v * e.v + fluid.eos.at(1.0 / y_x).e)) < 1e-12);
  }
}

TEST_CASE("off-shell Noether identity with exact derivatives") {
  const auto fluid = polytrope();
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int s = 0; s < 20; ++s) {
    const auto f = SmoothField::random(rng, 1.0, 0.4, 1.0, 0.3);
    for (int p = 0; p < 10; ++p) {
      const auto d = f.at(u(rng), u(rng));
      CHECK(noether_lagrange(d, fluid).residual() < 1e-10);
      CHECK(noether_euler(d, fluid).residual() < 1e-10);
      const auto dl = dependency_lagrange(d, fluid);
      const auto de = dependency_euler(d, fluid);
      CHECK(std::abs(dl.lhs - dl.rhs) < 1e-10);
      CHECK(std::abs(de.lhs - de.rhs) < 1e-10);
    }
  }
}

TEST_CASE("uniform motion solves both field equations") {
  const auto fluid = polytrope();
  const SmoothField x(0.1, 1.0, 0.3, {});
  const auto d = x.at(0.4, 0.7);
  CHECK(std::abs(newton_residual_exact(d, fluid)) < 1e-14);
  CHECK(std::abs(euler_residual_exact(d, fluid)) < 1e-14);
  const auto h = levels<LagrangeFieldState>(x, 32, 0.4);
  CHECK(max_abs(field_residual(h, fluid)) < 1e-12);
  CHECK(max_abs(energy_balance_residual(h, fluid)) < 1e-12);
  const auto he = levels<EulerFieldState>(x, 32, 0.4);
  CHECK(max_abs(field_residual(he, fluid)) < 1e-12);
}

TEST_CASE("finite-difference Noether residual converges at second order") {
  const auto fluid = polytrope();
  std::mt19937_64 rng(9);
  const auto f = SmoothField::random(rng, 1.0, 0.4, 1.0, 0.3);
  std::vector<double> h, el, ee, dep;
  for (int n : {64, 128, 256, 512}) {
    h.push_back(1.0 / n);
    const auto hl = levels<LagrangeFieldState>(f, n, 0.3);
    const auto he = levels<EulerFieldState>(f, n, 0.3);
    el.push_back(noether_residual(hl, fluid).max_residual());
    ee.push_back(noether_residual(he, fluid).max_residual());
    dep.push_back(dependency_check(he, fluid));
    // Both stencils see the same field.
    CHECK(noether_residual(hl, fluid, TimeStencil::staggered).max_residual() < 10.0 * el.back() + 1e-8);
  }
  CHECK(convergence_order(h, el) >= 1.9);
  CHECK(convergence_order(h, ee) >= 1.9);
  CHECK(convergence_order(h, dep) >= 1.9);
}

TEST_CASE("folded labels are rejected") {
  const auto fluid = polytrope();
  const SmoothField folded(0.0, 1.0, 0.0, {{0.5, 6.283185307179586, 0.0, 0.0}});  // y_x = 1 + pi cos < 0 somewhere
  CHECK_THROWS_AS(noether_residual(levels<EulerFieldState>(folded, 32, 0.0), fluid), ConfigurationError);
  const auto g = Grid1D::periodic(32, 1.0);
  CHECK_THROWS_AS(invert_periodic_map(g, sample(folded, g, 0.0), nullptr), ConfigurationError);
}

TEST_CASE("Lagrange to Euler inversion against the analytic placement") {
  const auto fluid = polytrope();
  std::mt19937_64 rng(13);
  const auto x = SmoothField::random(rng, 1.0, 0.2, 1.0, 0.3);
  const double t = 0.25;
  const auto g = Grid1D::periodic(256, 1.0);
  const LagrangeFieldState state{g, sample(x, g, t)};
  const auto out = lagrange_to_euler(state, fluid);
  CHECK(out.report.passed());
  CHECK(out.report.max_value() < 1e-8);
  Grid1D target;
  (void)invert_periodic_map(g, state.x, &target);
  for (int j = 0; j < target.n; ++j) {
    const double y = out.euler.y.value[j];
    const auto d = x.at(t, y);
    CHECK(std::abs(d.value - target.x(j)) < 1e-12);
    // Label rate: ydot = -xdot / x_y.
    CHECK(std::abs(out.euler.y.rate[j] + d.t / d.x) < 1e-10);
  }
  const auto back = euler_to_lagrange(out.euler, fluid);
  CHECK(back.report.max_value() < 1e-8);
  for (int i = 0; i < g.n; ++i) {
    CHECK(std::abs(back.lagrange.x.value[i] - state.x.value[i]) < 1e-10);
    CHECK(std::abs(back.lagrange.x.rate[i] - state.x.rate[i]) < 1e-9);
  }
}

TEST_CASE("rest-frame correspondence") {
  const auto fluid = polytrope();
  std::mt19937_64 rng(17);
  const auto y = SmoothField::random(rng, 1.0, 0.0, 1.0, 0.3);
  const auto g = Grid1D::periodic(64, 1.0);
  EulerFieldState rest{g, sample(y, g, 0.0)};
  for (double& r : rest.y.rate) r = 0.0;
  CHECK(rest_frame_correspondence(rest, fluid).max_value() <= 1e-12);
  rest.y.rate[3] = 0.1;
  CHECK_THROWS_AS(rest_frame_correspondence(rest, fluid), std::invalid_argument);
  const auto d = Grid1D::dirichlet(32, 1.0);
  CHECK_THROWS_AS(invert_periodic_map(d, sample(y, d, 0.0), nullptr), std::invalid_argument);
}
