#pragma once

#include <span>
#include <vector>

namespace fieldflow {

enum class Boundary { periodic, dirichlet };

/// Uniform 1D grid. Periodic grids hold n nodes over a period n*h; Dirichlet
/// grids hold n nodes spanning (n-1)*h including both end points.
struct Grid1D {
  int n = 0;
  double h = 0.0;
  Boundary boundary = Boundary::periodic;
  double origin = 0.0;

  static Grid1D periodic(int n, double length, double origin = 0.0);
  static Grid1D dirichlet(int n, double length, double origin = 0.0);

  /// Throws std::invalid_argument unless n >= 8 and h > 0.
  void validate() const;

  double length() const;
  double x(int i) const { return origin + i * h; }
  bool is_periodic() const { return boundary == Boundary::periodic; }
};

/// Half-open node range [begin, end). On Dirichlet grids the trapezoid rule
/// covers the interval from node begin to node end - 1.
struct NodeRange {
  int begin = 0;
  int end = 0;
};

/// Second-order central derivative. On periodic grids `jump` is the increment
/// f(x + L) - f(x) of a field with a linear winding (e.g. y = x + periodic).
/// Dirichlet grids use one-sided second-order stencils at both ends.
std::vector<double> derivative(const Grid1D& grid, std::span<const double> f, double jump = 0.0);

/// Fourth-order central derivative on a periodic grid.
std::vector<double> derivative4(const Grid1D& grid, std::span<const double> f, double jump = 0.0);

/// Rectangle rule (periodic) or trapezoid rule (Dirichlet).
std::vector<double> quadrature_weights(const Grid1D& grid);
double integrate(const Grid1D& grid, std::span<const double> f);
double integrate(const Grid1D& grid, std::span<const double> f, NodeRange range);

}  // namespace fieldflow
