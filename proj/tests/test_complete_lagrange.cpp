#include <doctest.h>

#include <cmath>
#include <random>

#include "fieldflow/complete_lagrange.hpp"
#include "fieldflow/manufactured.hpp"

using namespace fieldflow;

namespace {

CompleteLagrangeFluid gas() { return CompleteLagrangeFluid::ideal_gas(1.0, 1.5, 1.0, 1.0, {1.4, 1.0, 1.0}); }

SpacetimeJacobian random_jacobian(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> pos(0.5, 2.0), v(-0.5, 0.5), w(-0.3, 0.3);
  const double t_tau = pos(rng), chi = pos(rng);
  return {t_tau, w(rng) * chi, v(rng) * t_tau, chi};
}

}  // namespace

TEST_CASE("kinematics of the spacetime Jacobian") {
  const SpacetimeJacobian X{2.0, 0.3, 0.5, 1.5};
  const auto k = kinematics_cl(X);
  CHECK(k.T == doctest::Approx(0.5));
  CHECK(k.v == doctest::Approx(0.25));
  CHECK(k.det == doctest::Approx(2.0 * 1.5 - 0.3 * 0.5));
  CHECK(k.V == doctest::Approx(k.det / 2.0));
  const auto cw = chi_w(X);
  CHECK(cw.chi == doctest::Approx(1.5));
  CHECK(cw.w == doctest::Approx(0.2));
  // V = chi (1 - w v)
  CHECK(k.V == doctest::Approx(cw.chi * (1.0 - cw.w * k.v)).epsilon(1e-14));
  CHECK_THROWS_AS(kinematics_cl({-1.0, 0.0, 0.0, 1.0}), ConfigurationError);
  CHECK_THROWS_AS(kinematics_cl({1.0, 0.0, 0.0, -1.0}), ConfigurationError);
  CHECK_THROWS_AS(kinematics_cl({1.0, 2.0, 1.0, 1.0}), ConfigurationError);  // det < 0
}

TEST_CASE("Lagrangian, inverse Jacobian and vanishing table entry") {
  const auto fluid = gas();
  std::mt19937_64 rng(2);
  for (int k = 0; k < 100; ++k) {
    const auto X = random_jacobian(rng);
    const auto pt = cl_point(X, fluid);
    const double T = 1.0 / X.t_tau, V = (X.t_tau * X.x_y - X.t_y * X.x_tau) / X.t_tau, v = X.x_tau / X.t_tau;
    const double f = -T * std::log(V) - 1.5 * T * (std::log(T) - 1.0);
    CHECK(std::abs(pt.L - X.t_tau * (0.5 * 1.4 * v * v - f)) < 1e-12);
    // Z is the inverse of X = ((t_tau, t_y), (x_tau, x_y)).
    const double X_[2][2] = {{X.t_tau, X.t_y}, {X.x_tau, X.x_y}};
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        double acc = 0.0;
        for (int m = 0; m < 2; ++m) acc += pt.Z[a][m] * X_[m][b];
        CHECK(std::abs(acc - (a == b ? 1.0 : 0.0)) < 1e-12);
      }
    }
    CHECK(std::abs(pt.T[1][0]) < 1e-12);
    CHECK(std::abs(pt.T[0][0] + pt.s) < 1e-12);
    const auto c = cl_contraction(pt, X);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) CHECK(std::abs(c[a][b] - pt.T[a][b]) < 1e-12);
    CHECK(cl_identities(X, fluid).passed());
  }
}

TEST_CASE("canonical inversion round trip") {
  const auto fluid = gas();
  std::mt19937_64 rng(31);
  for (int k = 0; k < 100; ++k) {
    const auto X = random_jacobian(rng);
    const auto pt = cl_point(X, fluid);
    const auto inv = invert_canonical(canonical_pi(pt), pt.cw, fluid);
    CHECK(std::abs(inv.e - pt.e) <= 1e-10 * std::max(1.0, std::abs(pt.e)));
    CHECK(std::abs(inv.V - pt.k.V) <= 1e-10 * std::max(1.0, pt.k.V));
    CHECK(std::abs(inv.T - pt.k.T) <= 1e-10);
    CHECK(std::abs(inv.hamiltonian + pt.s) <= 1e-10);
    CHECK(inv.iterations <= 10);
  }
}

TEST_CASE("rest frame: Pi0 = -e and the closed-form guess is exact") {
  const auto fluid = gas();
  const SpacetimeJacobian X{0.8, 0.0, 0.0, 1.3};
  const auto pt = cl_point(X, fluid);
  const auto pi = canonical_pi(pt);
  CHECK(pi.Pi0 == doctest::Approx(-pt.e).epsilon(1e-13));
  CHECK(pi.Pi1 == doctest::Approx(0.0));
  const auto inv = invert_canonical(pi, pt.cw, fluid);
  CHECK(inv.iterations <= 1);
  CHECK(inv.V == doctest::Approx(1.3).epsilon(1e-13));
}

TEST_CASE("rest-frame reduction to ds = de/T + (p/T) dV") {
  const auto fluid = gas();
  for (double t_tau : {0.6, 1.0, 1.7}) {
    const auto r = rest_frame_reduction_cl({t_tau, 0.0, 0.0, 0.9}, fluid);
    CHECK(r.passed());
    CHECK(r.max_value() <= 1e-6);
  }
  CHECK_THROWS_AS(rest_frame_reduction_cl({1.0, 0.0, 0.2, 1.0}, fluid), std::invalid_argument);
}

TEST_CASE("beta other than one is rejected") {
  auto fluid = gas();
  fluid.constants.beta = 2.0;
  CHECK_THROWS_AS(fluid.validate(), std::invalid_argument);
}

TEST_CASE("transform from a thermal Euler snapshot") {
  const auto fluid = gas();
  std::mt19937_64 rng(4);
  const auto tau = SmoothField::random(rng, 0.0, 1.0, 1.0, 0.2);
  const auto y = SmoothField::random(rng, 1.0, 0.3, 1.0, 0.3);
  const auto g = Grid1D::periodic(256, 1.0);
  const ThermoFieldState snap{g, sample(tau, g, 0.4), sample(y, g, 0.4)};
  const auto out = transform_from_euler(snap, 0.4, fluid);
  CHECK(out.report.passed());
  CHECK(out.report.max_value() <= 1e-8);
  REQUIRE(out.state.jacobian.size() == static_cast<std::size_t>(g.n));
  for (double t : out.state.t) CHECK(t == 0.4);
  // Each material point maps back onto its labels.
  for (int i = 0; i < g.n; i += 17) {
    const double x = out.state.x[i];
    CHECK(std::abs(y.at(0.4, x).value - out.state.grid.x(i)) < 1e-10);
    CHECK(std::abs(tau.at(0.4, x).value - out.state.tau[i]) < 1e-10);
  }
}
