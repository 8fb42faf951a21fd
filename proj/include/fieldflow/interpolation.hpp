#pragma once

#include <span>
#include <vector>

namespace fieldflow {

/// Piecewise cubic Hermite interpolant through increasing samples with node
/// slopes limited so that the interpolant stays monotone (Fritsch-Carlson).
/// When the supplied slopes are exact and already admissible the interpolant
/// is fourth-order accurate.
class MonotoneCubic {
 public:
  MonotoneCubic(std::vector<double> x, std::vector<double> f, std::vector<double> slope);

  double operator()(double x) const;
  double derivative(double x) const;
  /// Solves f(x) = target for x inside [x.front(), x.back()].
  double inverse(double target) const;

  double front() const { return f_.front(); }
  double back() const { return f_.back(); }

 private:
  std::size_t segment(double x) const;

  std::vector<double> x_;
  std::vector<double> f_;
  std::vector<double> m_;
};

/// Four-point Lagrange cubic on a uniform periodic grid with node spacing h and
/// first node at origin. `jump` is f(x + n h) - f(x).
double periodic_cubic(std::span<const double> f, double origin, double h, double x, double jump = 0.0);

}  // namespace fieldflow

namespace fieldflow {

/// Trigonometric interpolant of samples f_j = f(origin + j h), j < n, of a
/// function with linear winding f(x + n h) = f(x) + jump. Coefficients come
/// from a real FFT; evaluation is O(n) per point. Spectrally accurate for
/// smooth data.
class TrigInterpolant {
 public:
  TrigInterpolant(std::span<const double> f, double origin, double h, double jump = 0.0);

  double operator()(double x) const;
  double derivative(double x) const;
  /// Exact derivative of the interpolant at the nodes.
  std::vector<double> node_derivative() const;

 private:
  int n_ = 0;
  double origin_ = 0.0;
  double period_ = 0.0;
  double slope_ = 0.0;
  std::vector<double> re_, im_;  // c_k = re + i im, k = 0 .. n/2, f = sum c_k e^{i k theta} + c.c.
};

}  // namespace fieldflow
