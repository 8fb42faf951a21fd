#include "fieldflow/manufactured.hpp"

#include <cmath>
#include <numbers>

namespace fieldflow {

SmoothField::SmoothField(double offset, double slope_x, double slope_t, std::vector<Wave> waves, Quadratic q)
    : offset_(offset), slope_x_(slope_x), slope_t_(slope_t), waves_(std::move(waves)), q_(q) {}

PotentialDerivatives SmoothField::at(double t, double x) const {
  PotentialDerivatives p;
  p.value = offset_ + slope_x_ * x + slope_t_ * t + q_.tt * t * t + q_.tx * t * x + q_.xx * x * x;
  p.t = slope_t_ + 2.0 * q_.tt * t + q_.tx * x;
  p.x = slope_x_ + q_.tx * t + 2.0 * q_.xx * x;
  p.tt = 2.0 * q_.tt;
  p.tx = q_.tx;
  p.xx = 2.0 * q_.xx;
  for (const auto& w : waves_) {
    const double a = w.wavenumber * x + w.frequency * t + w.phase;
    const double s = w.amplitude * std::sin(a);
    const double c = w.amplitude * std::cos(a);
    p.value += s;
    p.t += w.frequency * c;
    p.x += w.wavenumber * c;
    p.tt -= w.frequency * w.frequency * s;
    p.tx -= w.frequency * w.wavenumber * s;
    p.xx -= w.wavenumber * w.wavenumber * s;
  }
  return p;
}

SmoothField SmoothField::random(std::mt19937_64& rng, double slope_x, double slope_t, double period,
                                double amplitude, int modes) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::vector<Wave> waves;
  double gradient_bound = 0.0;
  for (int m = 1; m <= modes; ++m) {
    Wave w;
    w.wavenumber = 2.0 * std::numbers::pi * m / period;
    w.amplitude = unit(rng);
    w.frequency = w.wavenumber * unit(rng);
    w.phase = angle(rng);
    gradient_bound += std::abs(w.amplitude) * w.wavenumber;
    waves.push_back(w);
  }
  if (gradient_bound > 0.0) {
    for (auto& w : waves) w.amplitude *= amplitude / gradient_bound;
  }
  return SmoothField(unit(rng), slope_x, slope_t, std::move(waves));
}

GridField sample(const SmoothField& f, const Grid1D& grid, double t) {
  GridField g;
  g.value.resize(grid.n);
  g.rate.resize(grid.n);
  for (int i = 0; i < grid.n; ++i) {
    const auto p = f.at(t, grid.x(i));
    g.value[i] = p.value;
    g.rate[i] = p.t;
  }
  g.jump = grid.is_periodic() ? f.slope_x() * grid.length() : 0.0;
  return g;
}

}  // namespace fieldflow
