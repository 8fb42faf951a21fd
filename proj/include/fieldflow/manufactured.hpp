#pragma once

#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "fieldflow/grid.hpp"
#include "fieldflow/jet.hpp"
#include "fieldflow/kinematics.hpp"

namespace fieldflow {

/// A potential and its first and second partials at one spacetime point.
struct PotentialDerivatives {
  double value = 0.0;
  double t = 0.0;
  double x = 0.0;
  double tt = 0.0;
  double tx = 0.0;
  double xx = 0.0;
};

struct Wave {
  double amplitude = 0.0;
  double wavenumber = 0.0;
  double frequency = 0.0;
  double phase = 0.0;
};

struct Quadratic {
  double tt = 0.0;
  double tx = 0.0;
  double xx = 0.0;
};

/// f(t, x) = offset + slope_x x + slope_t t + sum A sin(k x + w t + phase)
///           + q.tt t^2 + q.tx t x + q.xx x^2.
class SmoothField {
 public:
  SmoothField() = default;
  SmoothField(double offset, double slope_x, double slope_t, std::vector<Wave> waves, Quadratic q = {});

  PotentialDerivatives at(double t, double x) const;

  double slope_x() const { return slope_x_; }

  /// Periodic over `period` apart from the linear winding slope_x x. The wave
  /// amplitudes are scaled so that |sum A k| <= amplitude.
  static SmoothField random(std::mt19937_64& rng, double slope_x, double slope_t, double period, double amplitude,
                            int modes = 3);

 private:
  double offset_ = 0.0;
  double slope_x_ = 0.0;
  double slope_t_ = 0.0;
  std::vector<Wave> waves_;
  Quadratic q_;
};

/// Samples values and time rates at time t; the jump is slope_x times the period.
GridField sample(const SmoothField& f, const Grid1D& grid, double t);

/// Smooth map R^In -> R^3: u -> A u + sum c sin(k . u + phase). Used for the
/// three-dimensional placement x(y) and for labels y(t, x) in 3+1 dimensions.
template <int In>
class SmoothMap {
 public:
  struct Mode {
    int component = 0;
    double amplitude = 0.0;
    std::array<double, In> k{};
    double phase = 0.0;
  };

  std::array<std::array<double, In>, 3> linear{};
  std::vector<Mode> modes;

  static SmoothMap random(std::mt19937_64& rng, double amplitude, int count = 6);

  std::array<double, 3> value(const std::array<double, In>& u) const {
    std::array<double, 3> r{};
    for (int o = 0; o < 3; ++o)
      for (int i = 0; i < In; ++i) r[o] += linear[o][i] * u[i];
    for (const auto& m : modes) r[m.component] += m.amplitude * std::sin(arg(m, u));
    return r;
  }

  std::array<std::array<double, In>, 3> gradient(const std::array<double, In>& u) const {
    auto g = linear;
    for (const auto& m : modes) {
      const double c = m.amplitude * std::cos(arg(m, u));
      for (int i = 0; i < In; ++i) g[m.component][i] += c * m.k[i];
    }
    return g;
  }

  /// First derivatives as jets whose seeds are the exact second derivatives.
  std::array<std::array<Jet<In>, In>, 3> gradient_jet(const std::array<double, In>& u) const {
    const auto g = gradient(u);
    std::array<std::array<Jet<In>, In>, 3> r{};
    for (int o = 0; o < 3; ++o)
      for (int i = 0; i < In; ++i) r[o][i] = Jet<In>(g[o][i]);
    for (const auto& m : modes) {
      const double s = -m.amplitude * std::sin(arg(m, u));
      for (int i = 0; i < In; ++i)
        for (int j = 0; j < In; ++j) r[m.component][i].d[j] += s * m.k[i] * m.k[j];
    }
    return r;
  }

 private:
  static double arg(const Mode& m, const std::array<double, In>& u) {
    double a = m.phase;
    for (int i = 0; i < In; ++i) a += m.k[i] * u[i];
    return a;
  }
};

template <int In>
SmoothMap<In> SmoothMap<In>::random(std::mt19937_64& rng, double amplitude, int count) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> angle(0.0, 6.283185307179586);
  SmoothMap<In> m;
  // Spatial block near the identity; any time column is a drift velocity.
  const int time_cols = In - 3;
  for (int o = 0; o < 3; ++o) {
    for (int i = 0; i < In; ++i) {
      const bool diag = (i - time_cols) == o;
      m.linear[o][i] = (diag ? 1.0 : 0.0) + 0.1 * unit(rng);
    }
  }
  for (int c = 0; c < count; ++c) {
    Mode mode;
    mode.component = c % 3;
    mode.amplitude = amplitude * unit(rng) / 3.0;
    for (int i = 0; i < In; ++i) mode.k[i] = 2.0 * unit(rng);
    mode.phase = angle(rng);
    m.modes.push_back(mode);
  }
  return m;
}

}  // namespace fieldflow
