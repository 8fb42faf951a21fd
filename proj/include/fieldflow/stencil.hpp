#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "fieldflow/errors.hpp"
#include "fieldflow/grid.hpp"
#include "fieldflow/kinematics.hpp"

namespace fieldflow {

/// How a three-level history is turned into time derivatives at its middle
/// level.
///  - central: point quantities at levels n-1, n, n+1 use the stored rates;
///    d_t A = (A(n+1) - A(n-1)) / 2dt and spatial terms are taken at level n.
///  - staggered: rates are value differences over each half step, point
///    quantities live at n -+ 1/2 (averaged values), d_t A = (A(n+1/2) -
///    A(n-1/2)) / dt and spatial terms are the average of the two half levels.
///    On an implicit-midpoint trajectory this reproduces the discrete update.
///  - half_levels: previous and next already are the states at n -+ 1/2 with
///    their own rates (current is unused); otherwise as staggered. Avoids the
///    roundoff of recovering rates from value differences.
enum class TimeStencil { central, staggered, half_levels };

/// Field values averaged over a step, with the rate replaced by the step difference.
inline GridField half_level(const GridField& a, const GridField& b, double dt) {
  GridField r;
  r.value.resize(a.value.size());
  r.rate.resize(a.value.size());
  for (std::size_t i = 0; i < a.value.size(); ++i) {
    r.value[i] = 0.5 * (a.value[i] + b.value[i]);
    r.rate[i] = (b.value[i] - a.value[i]) / dt;
  }
  r.jump = 0.5 * (a.jump + b.jump);
  return r;
}

/// Point-quantity arrays evaluated at the stations a stencil needs.
template <class Arrays>
struct Stations {
  std::vector<Arrays> at;
  TimeStencil stencil = TimeStencil::central;
  double dt = 0.0;

  std::vector<double> time_derivative(std::vector<double> Arrays::*m) const {
    const auto& a = at.front().*m;
    const auto& b = at.back().*m;
    const double denom = stencil == TimeStencil::central ? 2.0 * dt : dt;
    std::vector<double> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = (b[i] - a[i]) / denom;
    return r;
  }

  std::vector<double> middle(std::vector<double> Arrays::*m) const {
    if (stencil == TimeStencil::central) return at[1].*m;
    const auto& a = at[0].*m;
    const auto& b = at[1].*m;
    std::vector<double> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = 0.5 * (a[i] + b[i]);
    return r;
  }

  /// d_t A0 + d_x A1 at the middle level (A1 must not wind).
  std::vector<double> divergence(const Grid1D& grid, std::vector<double> Arrays::*a0,
                                 std::vector<double> Arrays::*a1) const {
    auto r = time_derivative(a0);
    const auto dx = derivative(grid, middle(a1));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += dx[i];
    return r;
  }
};

/// Evaluates `eval` at the stations of `stencil`. `half` builds the half-level
/// state of two consecutive levels.
template <class State, class Eval, class Half>
auto make_stations(const History<State>& h, TimeStencil stencil, Eval eval, Half half)
    -> Stations<decltype(eval(h.current))> {
  if (!(h.dt > 0.0)) throw InsufficientHistory("history needs a positive time step");
  Stations<decltype(eval(h.current))> s;
  s.stencil = stencil;
  s.dt = h.dt;
  if (stencil == TimeStencil::central) {
    s.at = {eval(h.previous), eval(h.current), eval(h.next)};
  } else if (stencil == TimeStencil::staggered) {
    s.at = {eval(half(h.previous, h.current, h.dt)), eval(half(h.current, h.next, h.dt))};
  } else {
    s.at = {eval(h.previous), eval(h.next)};
  }
  return s;
}

inline double max_norm(const std::vector<double>& v, int skip_edges = 0) {
  double m = 0.0;
  for (int i = skip_edges; i + skip_edges < static_cast<int>(v.size()); ++i) m = std::max(m, std::abs(v[i]));
  return m;
}

}  // namespace fieldflow
