#pragma once

#include <array>
#include <string>
#include <vector>

#include "fieldflow/errors.hpp"
#include "fieldflow/grid.hpp"
#include "fieldflow/jet.hpp"

namespace fieldflow {

template <class S> using Mat3 = std::array<std::array<S, 3>, 3>;
template <class S> using Vec3 = std::array<S, 3>;

/// Which way a Jacobian points: material-by-space holds y^a_k = dy^a/dx^k,
/// space-by-material holds x^k_a = dx^k/dy^a.
enum class Orientation { material_by_space, space_by_material };

/// d x d block of partial derivatives (d in 1..3); unused entries are ignored.
struct Jacobian {
  int dim = 1;
  Orientation orientation = Orientation::material_by_space;
  Mat3<double> entries{};

  static Jacobian scalar(double value, Orientation orientation);
  static Jacobian identity(int dim, Orientation orientation);
};

template <class S>
S det(const Mat3<S>& a, int dim) {
  if (dim == 1) return a[0][0];
  if (dim == 2) return a[0][0] * a[1][1] - a[0][1] * a[1][0];
  return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
         a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

/// Transposed cofactor matrix: adj(a) a = det(a) I.
template <class S>
Mat3<S> adjugate(const Mat3<S>& a, int dim) {
  Mat3<S> r{};
  if (dim == 1) {
    r[0][0] = S(1.0);
  } else if (dim == 2) {
    r[0][0] = a[1][1];
    r[0][1] = -a[0][1];
    r[1][0] = -a[1][0];
    r[1][1] = a[0][0];
  } else {
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        const int i1 = (j + 1) % 3, i2 = (j + 2) % 3, j1 = (i + 1) % 3, j2 = (i + 2) % 3;
        r[i][j] = a[i1][j1] * a[i2][j2] - a[i1][j2] * a[i2][j1];
      }
    }
  }
  return r;
}

double determinant(const Jacobian& J);
/// Inverse with the opposite orientation tag; throws ConfigurationError when
/// the determinant is not strictly positive.
Jacobian inverse(const Jacobian& J);

/// rho = det(y^a_k).
double density_from_jacobian(const Jacobian& J);
/// V = det(x^k_a).
double molar_volume(const Jacobian& J);

/// v^k = -x^k_a ydot^a with x the inverse of J = (y^a_k).
Vec3<double> velocity_euler(const Vec3<double>& ydot, const Jacobian& J);
/// In the Lagrange picture the velocity is the placement rate itself.
Vec3<double> velocity_lagrange(const Vec3<double>& xdot, int dim);

/// Spacetime gradients y^a_mu of the material labels; index mu = 0 is time.
template <class S> using LabelGradients = std::array<std::array<S, 4>, 3>;

/// j^kappa = eps^{kappa mu nu lambda} y1_mu y2_nu y3_lambda with eps^{0123} = 1.
template <class S>
std::array<S, 4> matter_current(const LabelGradients<S>& g) {
  std::array<S, 4> j{};
  for (int k = 0; k < 4; ++k) {
    S acc(0.0);
    for (int m = 0; m < 4; ++m) {
      for (int n = 0; n < 4; ++n) {
        for (int l = 0; l < 4; ++l) {
          const int idx[4] = {k, m, n, l};
          int sign = 1;
          bool distinct = true;
          for (int a = 0; a < 4 && distinct; ++a) {
            for (int b = a + 1; b < 4; ++b) {
              if (idx[a] == idx[b]) { distinct = false; break; }
              if (idx[a] > idx[b]) sign = -sign;
            }
          }
          if (!distinct) continue;
          acc += S(static_cast<double>(sign)) * g[0][m] * g[1][n] * g[2][l];
        }
      }
    }
    j[k] = acc;
  }
  return j;
}

/// One-dimensional reduction: j = (y_x, -y_t) = (rho, rho v).
std::array<double, 2> matter_current_1d(double y_t, double y_x);

/// T = beta (taudot + v . grad tau).
double temperature_euler(double taudot, const Vec3<double>& grad_tau, const Vec3<double>& v, double beta);

/// Point-wise observables derived from field gradients.
struct KinematicSample {
  double rho = 1.0;
  double V = 1.0;
  Vec3<double> v{};
  double T = 0.0;  // zero outside thermal pictures
  std::array<double, 4> j{};
};

KinematicSample kinematic_sample_euler(const Vec3<double>& ydot, const Jacobian& J);

/// Values and time rates of one potential on a grid; `jump` is the winding
/// f(x + L) - f(x) on periodic grids.
struct GridField {
  std::vector<double> value;
  std::vector<double> rate;
  double jump = 0.0;
};

/// Three consecutive time levels spaced dt apart.
template <class State>
struct History {
  State previous;
  State current;
  State next;
  double dt = 0.0;
};

/// Takes the last three levels of a longer record.
template <class State>
History<State> make_history(const std::vector<State>& levels, double dt) {
  if (levels.size() < 3) {
    throw InsufficientHistory("need 3 time levels, got " + std::to_string(levels.size()));
  }
  const auto n = levels.size();
  return History<State>{levels[n - 3], levels[n - 2], levels[n - 1], dt};
}

/// Max-norm of d_t j^0 + d_x j^1 at the middle level of an Euler-picture label
/// history. j^0 = Dy at each level, j^1 = -ydot from the stored rates.
double continuity_residual(const Grid1D& grid, const std::vector<GridField>& levels, double dt,
                           double scale = 1.0);

/// d/dy^a (V y^a_k) for a placement x(y) whose first derivatives are given as
/// jets along the three material directions. Vanishes identically.
template <int N>
Vec3<double> piola_divergence(const Mat3<Jet<N>>& x_of_y) {
  static_assert(N >= 3);
  const Mat3<Jet<N>> cof = adjugate(x_of_y, 3);  // V y^a_k = adj(x)^a_k
  Vec3<double> out{};
  for (int k = 0; k < 3; ++k) {
    double acc = 0.0;
    for (int a = 0; a < 3; ++a) acc += cof[a][k].d[a];
    out[k] = acc;
  }
  return out;
}

}  // namespace fieldflow
