#include <doctest.h>

#include <cmath>
#include <random>

#include "fieldflow/diagnostics.hpp"
#include "fieldflow/kinematics.hpp"
#include "fieldflow/manufactured.hpp"

using namespace fieldflow;

namespace {

Jacobian random_jacobian(std::mt19937_64& rng, int dim) {
  std::uniform_real_distribution<double> u(-0.3, 0.3);
  Jacobian J = Jacobian::identity(dim, Orientation::material_by_space);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) J.entries[i][j] += u(rng);
  return J;
}

}  // namespace

TEST_CASE("inverse pair identity") {
  std::mt19937_64 rng(11);
  for (int dim = 1; dim <= 3; ++dim) {
    for (int k = 0; k < 50; ++k) {
      const auto J = random_jacobian(rng, dim);
      const auto X = inverse(J);
      CHECK(X.orientation == Orientation::space_by_material);
      CHECK(std::abs(molar_volume(X) * density_from_jacobian(J) - 1.0) < 1e-12);
      for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
          double acc = 0.0;
          for (int l = 0; l < dim; ++l) acc += X.entries[i][l] * J.entries[l][j];
          CHECK(std::abs(acc - (i == j ? 1.0 : 0.0)) < 1e-12);
        }
      }
    }
  }
}

TEST_CASE("folded or mis-oriented Jacobians are rejected") {
  auto J = Jacobian::identity(2, Orientation::material_by_space);
  J.entries[0][0] = -1.0;
  CHECK_THROWS_AS(inverse(J), ConfigurationError);
  CHECK_THROWS_AS(density_from_jacobian(J), ConfigurationError);
  CHECK_THROWS_AS(density_from_jacobian(Jacobian::scalar(0.0, Orientation::material_by_space)), ConfigurationError);
  CHECK_THROWS_AS(molar_volume(Jacobian::identity(3, Orientation::material_by_space)), std::invalid_argument);
  CHECK_THROWS_AS(density_from_jacobian(Jacobian::identity(3, Orientation::space_by_material)),
                  std::invalid_argument);
}

TEST_CASE("matter current reduces to density and flux") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  for (int k = 0; k < 30; ++k) {
    const auto J = random_jacobian(rng, 3);
    const Vec3<double> ydot{u(rng), u(rng), u(rng)};
    LabelGradients<double> g{};
    for (int a = 0; a < 3; ++a) {
      g[a][0] = ydot[a];
      for (int i = 0; i < 3; ++i) g[a][i + 1] = J.entries[a][i];
    }
    const auto j = matter_current(g);
    const double rho = density_from_jacobian(J);
    CHECK(std::abs(j[0] - rho) < 1e-12);
    const auto v = velocity_euler(ydot, J);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(j[i + 1] - rho * v[i]) < 1e-12);
    const auto sample = kinematic_sample_euler(ydot, J);
    CHECK(std::abs(sample.rho * sample.V - 1.0) < 1e-12);
  }
}

TEST_CASE("one-dimensional reductions") {
  const auto j = matter_current_1d(-0.6, 2.0);  // v = -y_t / y_x = 0.3
  CHECK(j[0] == 2.0);
  CHECK(j[1] == doctest::Approx(2.0 * 0.3));
  CHECK(temperature_euler(1.5, {0.2, 0, 0}, {0.5, 0, 0}, 2.0) == doctest::Approx(2.0 * (1.5 + 0.1)));
  const auto v = velocity_lagrange({0.4, 0.1, 0.2}, 1);
  CHECK(v[0] == 0.4);
  CHECK(v[1] == 0.0);
}

TEST_CASE("continuity holds identically for analytic label fields") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int s = 0; s < 10; ++s) {
    const auto labels = SmoothMap<4>::random(rng, 0.3);
    for (int p = 0; p < 10; ++p) {
      const auto grad = labels.gradient_jet({u(rng), u(rng), u(rng), u(rng)});
      const auto j = matter_current<Jet<4>>(grad);
      double div = 0.0, scaled = 0.0;
      for (int k = 0; k < 4; ++k) {
        div += j[k].d[k];
        scaled += (3.0 * j[k]).d[k];  // M j with M = 3
      }
      CHECK(std::abs(div) < 1e-12);
      CHECK(std::abs(scaled) < 1e-12);
    }
  }
}

TEST_CASE("grid continuity residual converges at second order and scales with M") {
  std::mt19937_64 rng(8);
  const auto y = SmoothField::random(rng, 1.0, 0.3, 1.0, 0.3);
  std::vector<double> h, err;
  for (int n : {64, 128, 256, 512}) {
    const auto g = Grid1D::periodic(n, 1.0);
    const double dt = 0.5 * g.h;
    const std::vector<GridField> levels{sample(y, g, 0.2 - dt), sample(y, g, 0.2), sample(y, g, 0.2 + dt)};
    h.push_back(g.h);
    err.push_back(continuity_residual(g, levels, dt));
    CHECK(continuity_residual(g, levels, dt, 2.5) == doctest::Approx(2.5 * err.back()).epsilon(1e-12));
  }
  CHECK(convergence_order(h, err) >= 1.9);
}

TEST_CASE("Piola identity d_a(V y^a_k) = 0") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int s = 0; s < 20; ++s) {
    const auto map = SmoothMap<3>::random(rng, 0.3);
    const auto g = map.gradient_jet({u(rng), u(rng), u(rng)});
    for (double c : piola_divergence<3>(g)) CHECK(std::abs(c) < 1e-12);
  }
}

TEST_CASE("history needs three levels") {
  std::vector<int> levels{1, 2};
  CHECK_THROWS_AS(make_history(levels, 0.1), InsufficientHistory);
  levels.push_back(3);
  levels.push_back(4);
  const auto h = make_history(levels, 0.1);
  CHECK(h.previous == 2);
  CHECK(h.next == 4);
}
