#include "fieldflow/grid.hpp"

#include <stdexcept>
#include <string>

namespace fieldflow {

Grid1D Grid1D::periodic(int n, double length, double origin) {
  Grid1D g{n, n > 0 ? length / n : 0.0, Boundary::periodic, origin};
  g.validate();
  return g;
}

Grid1D Grid1D::dirichlet(int n, double length, double origin) {
  Grid1D g{n, n > 1 ? length / (n - 1) : 0.0, Boundary::dirichlet, origin};
  g.validate();
  return g;
}

void Grid1D::validate() const {
  if (n < 8) throw std::invalid_argument("grid needs n >= 8 cells, got " + std::to_string(n));
  if (!(h > 0.0)) throw std::invalid_argument("grid spacing must be > 0");
}

double Grid1D::length() const { return is_periodic() ? n * h : (n - 1) * h; }

std::vector<double> derivative(const Grid1D& grid, std::span<const double> f, double jump) {
  const int n = grid.n;
  if (static_cast<int>(f.size()) != n) throw std::invalid_argument("derivative: field size does not match grid");
  std::vector<double> d(n);
  const double inv = 0.5 / grid.h;
  for (int i = 1; i + 1 < n; ++i) d[i] = (f[i + 1] - f[i - 1]) * inv;
  if (grid.is_periodic()) {
    d[0] = (f[1] - (f[n - 1] - jump)) * inv;
    d[n - 1] = ((f[0] + jump) - f[n - 2]) * inv;
  } else {
    d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) * inv;
    d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) * inv;
  }
  return d;
}

std::vector<double> derivative4(const Grid1D& grid, std::span<const double> f, double jump) {
  if (!grid.is_periodic()) throw std::invalid_argument("derivative4 is defined on periodic grids only");
  const int n = grid.n;
  if (static_cast<int>(f.size()) != n) throw std::invalid_argument("derivative4: field size does not match grid");
  auto at = [&](int j) {
    if (j < 0) return f[j + n] - jump;
    if (j >= n) return f[j - n] + jump;
    return f[j];
  };
  std::vector<double> d(n);
  const double inv = 1.0 / (12.0 * grid.h);
  for (int i = 0; i < n; ++i) d[i] = (at(i - 2) - 8.0 * at(i - 1) + 8.0 * at(i + 1) - at(i + 2)) * inv;
  return d;
}

std::vector<double> quadrature_weights(const Grid1D& grid) {
  std::vector<double> w(grid.n, grid.h);
  if (!grid.is_periodic()) {
    w.front() *= 0.5;
    w.back() *= 0.5;
  }
  return w;
}

double integrate(const Grid1D& grid, std::span<const double> f) {
  return integrate(grid, f, NodeRange{0, grid.n});
}

double integrate(const Grid1D& grid, std::span<const double> f, NodeRange range) {
  if (range.begin < 0 || range.end > grid.n || range.begin > range.end) {
    throw std::invalid_argument("integrate: node range outside grid");
  }
  double sum = 0.0;
  if (grid.is_periodic()) {
    for (int i = range.begin; i < range.end; ++i) sum += f[i];
    return sum * grid.h;
  }
  if (range.end - range.begin < 2) return 0.0;
  for (int i = range.begin; i < range.end; ++i) sum += f[i];
  sum -= 0.5 * (f[range.begin] + f[range.end - 1]);
  return sum * grid.h;
}

}  // namespace fieldflow
