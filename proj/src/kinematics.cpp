#include "fieldflow/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fieldflow {

Jacobian Jacobian::scalar(double value, Orientation orientation) {
  Jacobian J;
  J.dim = 1;
  J.orientation = orientation;
  J.entries[0][0] = value;
  return J;
}

Jacobian Jacobian::identity(int dim, Orientation orientation) {
  Jacobian J;
  J.dim = dim;
  J.orientation = orientation;
  for (int i = 0; i < dim; ++i) J.entries[i][i] = 1.0;
  return J;
}

namespace {

void check_dim(const Jacobian& J) {
  if (J.dim < 1 || J.dim > 3) throw std::invalid_argument("Jacobian dimension must be 1, 2 or 3");
}

double positive_det(const Jacobian& J) {
  check_dim(J);
  const double d = det(J.entries, J.dim);
  if (!(d > 0.0)) throw ConfigurationError("Jacobian determinant " + std::to_string(d) + " is not positive");
  return d;
}

}  // namespace

double determinant(const Jacobian& J) {
  check_dim(J);
  return det(J.entries, J.dim);
}

Jacobian inverse(const Jacobian& J) {
  const double d = positive_det(J);
  Jacobian r;
  r.dim = J.dim;
  r.orientation = J.orientation == Orientation::material_by_space ? Orientation::space_by_material
                                                                  : Orientation::material_by_space;
  const auto adj = adjugate(J.entries, J.dim);
  for (int i = 0; i < J.dim; ++i)
    for (int j = 0; j < J.dim; ++j) r.entries[i][j] = adj[i][j] / d;
  return r;
}

double density_from_jacobian(const Jacobian& J) {
  if (J.orientation != Orientation::material_by_space) {
    throw std::invalid_argument("density_from_jacobian expects y^a_k");
  }
  return positive_det(J);
}

double molar_volume(const Jacobian& J) {
  if (J.orientation != Orientation::space_by_material) throw std::invalid_argument("molar_volume expects x^k_a");
  return positive_det(J);
}

Vec3<double> velocity_euler(const Vec3<double>& ydot, const Jacobian& J) {
  const Jacobian x = inverse(J);
  Vec3<double> v{};
  for (int k = 0; k < J.dim; ++k) {
    for (int a = 0; a < J.dim; ++a) v[k] -= x.entries[k][a] * ydot[a];
  }
  return v;
}

Vec3<double> velocity_lagrange(const Vec3<double>& xdot, int dim) {
  Vec3<double> v{};
  for (int k = 0; k < dim; ++k) v[k] = xdot[k];
  return v;
}

std::array<double, 2> matter_current_1d(double y_t, double y_x) {
  if (!(y_x > 0.0)) throw ConfigurationError("label gradient y_x must be positive");
  return {y_x, -y_t};
}

double temperature_euler(double taudot, const Vec3<double>& grad_tau, const Vec3<double>& v, double beta) {
  double adv = 0.0;
  for (int k = 0; k < 3; ++k) adv += v[k] * grad_tau[k];
  return beta * (taudot + adv);
}

KinematicSample kinematic_sample_euler(const Vec3<double>& ydot, const Jacobian& J) {
  KinematicSample s;
  s.rho = density_from_jacobian(J);
  s.V = 1.0 / s.rho;
  s.v = velocity_euler(ydot, J);
  s.j[0] = s.rho;
  for (int k = 0; k < J.dim; ++k) s.j[k + 1] = s.rho * s.v[k];
  return s;
}

double continuity_residual(const Grid1D& grid, const std::vector<GridField>& levels, double dt, double scale) {
  if (levels.size() < 3) {
    throw InsufficientHistory("continuity_residual needs 3 time levels, got " + std::to_string(levels.size()));
  }
  if (!(dt > 0.0)) throw std::invalid_argument("continuity_residual: dt must be positive");
  const auto& prev = levels[levels.size() - 3];
  const auto& cur = levels[levels.size() - 2];
  const auto& next = levels[levels.size() - 1];
  const auto j0_prev = derivative(grid, prev.value, prev.jump);
  const auto j0_next = derivative(grid, next.value, next.jump);
  std::vector<double> j1(cur.rate.size());
  for (std::size_t i = 0; i < j1.size(); ++i) j1[i] = -scale * cur.rate[i];
  const auto dj1 = derivative(grid, j1);
  double worst = 0.0;
  for (int i = 0; i < grid.n; ++i) {
    const double r = scale * (j0_next[i] - j0_prev[i]) / (2.0 * dt) + dj1[i];
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

}  // namespace fieldflow
