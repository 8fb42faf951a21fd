#include <doctest.h>

#include <cmath>
#include <random>

#include "fieldflow/diagnostics.hpp"
#include "fieldflow/thermo_euler.hpp"

using namespace fieldflow;

namespace {

ThermalFluid gas(double beta = 1.0) { return {ThermalEos::ideal_gas(1.0, 1.5), {1.2, beta, 1.0}}; }

History<ThermoFieldState> levels(const SmoothField& tau, const SmoothField& y, int n, double t) {
  const auto g = Grid1D::periodic(n, 1.0);
  const double dt = 0.5 * g.h;
  auto at = [&](double s) { return ThermoFieldState{g, sample(tau, g, s), sample(y, g, s)}; };
  return {at(t - dt), at(t), at(t + dt), dt};
}

}  // namespace

TEST_CASE("thermal tables, energy density and potential determinant") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.6, 1.6), w(-0.4, 0.4);
  for (double beta : {1.0, 2.5}) {
    const auto fluid = gas(beta);
    for (int k = 0; k < 100; ++k) {
      const double tau_t = u(rng), tau_x = w(rng), y_t = w(rng), y_x = u(rng);
      if (tau_t + (-y_t / y_x) * tau_x <= 0.05) continue;
      const auto pt = thermo_point(tau_t, tau_x, y_t, y_x, fluid);
      const auto c = thermo_contraction(pt, tau_t, tau_x, y_t, y_x);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(std::abs(c[i][j] - pt.t[i][j]) < 1e-12);
      const double e = 1.5 * pt.T;  // c_V T
      CHECK(std::abs(pt.t[0][0] - pt.rho * (0.5 * 1.2 * pt.v * pt.v + e)) < 1e-12);
      CHECK(std::abs(potential_jacobian_det(tau_t, tau_x, y_t, y_x) - pt.rho * pt.T / beta) < 1e-12);
    }
  }
}

TEST_CASE("barotropic embedding with a frozen isothermal clock") {
  const BarotropicFluid baro{BarotropicEos::polytrope(1.0, 2.0), {1.2, 1.0, 1.0}};
  const ThermalFluid embedded{ThermalEos::from_barotropic(baro.eos), {1.2, 2.0, 1.0}};
  const double T0 = 0.8;
  for (double y_t : {-0.3, 0.0, 0.45}) {
    const double y_x = 1.3;
    const auto th = thermo_point(T0 / 2.0, 0.0, y_t, y_x, embedded);
    const auto e = euler_point(y_t, y_x, baro);
    CHECK(std::abs(th.T - T0) < 1e-15);
    CHECK(std::abs(th.L - e.L) < 1e-12);
    CHECK(std::abs(th.Theta[0][1] - e.Theta[0]) < 1e-12);
    CHECK(std::abs(th.Theta[1][1] - e.Theta[1]) < 1e-12);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) CHECK(std::abs(th.t[i][j] - e.t[i][j]) < 1e-12);
  }
}

TEST_CASE("nonpositive derived temperature is fatal") {
  CHECK_THROWS_AS(thermo_point(-0.1, 0.0, 0.0, 1.0, gas()), DomainError);
  CHECK_THROWS_AS(thermo_point(0.1, 1.0, 0.5, 1.0, gas()), DomainError);  // T = tau_t - 0.5 tau_x < 0
}

TEST_CASE("analytic identities of the four-potential picture") {
  const auto fluid = gas(1.5);
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int s = 0; s < 20; ++s) {
    const auto tau = SmoothField::random(rng, 0.0, 1.0, 1.0, 0.2);
    const auto y = SmoothField::random(rng, 1.0, 0.3, 1.0, 0.3);
    for (int p = 0; p < 10; ++p) {
      const double t = u(rng), x = u(rng);
      const auto dt = tau.at(t, x), dy = y.at(t, x);
      CHECK(noether4(dt, dy, fluid).residual() < 1e-10);
      const auto f = thermo_field_exact(dt, dy, fluid);
      CHECK(std::abs(f.conservative - f.expanded) < 1e-10);
      CHECK(std::abs(f.entropy_divergence - f.entropy_advective) < 1e-10);
    }
  }
}

TEST_CASE("finite-difference residuals converge at second order") {
  const auto fluid = gas();
  std::mt19937_64 rng(10);
  const auto tau = SmoothField::random(rng, 0.0, 1.0, 1.0, 0.2);
  const auto y = SmoothField::random(rng, 1.0, 0.3, 1.0, 0.3);
  std::vector<double> h, noether, forms, entropy;
  for (int n : {64, 128, 256, 512}) {
    const auto hist = levels(tau, y, n, 0.3);
    h.push_back(1.0 / n);
    noether.push_back(noether4_residual(hist, fluid).max_residual());
    const auto r = thermo_field_residual(hist, fluid);
    double gap = 0.0;
    for (std::size_t i = 0; i < r.conservative.size(); ++i)
      gap = std::max(gap, std::abs(r.conservative[i] - r.expanded[i]));
    forms.push_back(gap);
    const auto e = entropy_residual(hist, fluid);
    double egap = 0.0;
    for (std::size_t i = 0; i < e.divergence.size(); ++i)
      egap = std::max(egap, std::abs(e.divergence[i] - e.advective[i]));
    entropy.push_back(egap);
  }
  CHECK(convergence_order(h, noether) >= 1.9);
  CHECK(convergence_order(h, forms) >= 1.9);
  CHECK(convergence_order(h, entropy) >= 1.9);
}

TEST_CASE("steady uniform flow at constant temperature has vanishing residuals") {
  const auto fluid = gas();
  const SmoothField tau(0.0, 0.0, 1.3, {});
  const SmoothField y(0.0, 1.0, -0.2, {});
  const auto hist = levels(tau, y, 32, 0.1);
  CHECK(thermo_field_residual(hist, fluid).max_conservative() < 1e-12);
  CHECK(thermo_field_residual(hist, fluid, TimeStencil::staggered).max_expanded() < 1e-12);
  CHECK(entropy_residual(hist, fluid).max_divergence() < 1e-12);
  CHECK(noether4_residual(hist, fluid).max_residual() < 1e-12);
  const auto prof = thermo_profile(hist.current, fluid);
  for (double T : prof.T) CHECK(T == doctest::Approx(1.3).epsilon(1e-13));
  for (double v : prof.v) CHECK(v == doctest::Approx(0.2).epsilon(1e-13));
}
