#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "fieldflow/diagnostics.hpp"
#include "fieldflow/grid.hpp"
#include "fieldflow/interpolation.hpp"

using namespace fieldflow;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<double> samples(const Grid1D& g, double (*f)(double)) {
  std::vector<double> v(g.n);
  for (int i = 0; i < g.n; ++i) v[i] = f(g.x(i));
  return v;
}

double wave(double x) { return std::sin(kTwoPi * x) + 0.3 * std::cos(2.0 * kTwoPi * x); }
double wave_dx(double x) { return kTwoPi * std::cos(kTwoPi * x) - 0.6 * kTwoPi * std::sin(2.0 * kTwoPi * x); }

double derivative_error(int n, bool fourth) {
  const auto g = Grid1D::periodic(n, 1.0);
  const auto d = fourth ? derivative4(g, samples(g, wave)) : derivative(g, samples(g, wave));
  double err = 0.0;
  for (int i = 0; i < n; ++i) err = std::max(err, std::abs(d[i] - wave_dx(g.x(i))));
  return err;
}

}  // namespace

TEST_CASE("grid construction and validation") {
  const auto p = Grid1D::periodic(10, 2.0);
  CHECK(p.h == doctest::Approx(0.2));
  CHECK(p.length() == doctest::Approx(2.0));
  const auto d = Grid1D::dirichlet(11, 1.0);
  CHECK(d.h == doctest::Approx(0.1));
  CHECK(d.x(10) == doctest::Approx(1.0));
  CHECK_THROWS_AS(Grid1D::periodic(4, 1.0).validate(), std::invalid_argument);
  CHECK_THROWS_AS((Grid1D{16, 0.0, Boundary::periodic, 0.0}.validate()), std::invalid_argument);
}

TEST_CASE("central derivatives converge at their design order") {
  const std::vector<double> h{1.0 / 32, 1.0 / 64, 1.0 / 128, 1.0 / 256};
  std::vector<double> e2, e4;
  for (double s : h) {
    e2.push_back(derivative_error(static_cast<int>(std::lround(1.0 / s)), false));
    e4.push_back(derivative_error(static_cast<int>(std::lround(1.0 / s)), true));
  }
  CHECK(convergence_order(h, e2) == doctest::Approx(2.0).epsilon(0.03));
  CHECK(convergence_order(h, e4) == doctest::Approx(4.0).epsilon(0.03));
  for (double o : pairwise_orders(h, e2)) CHECK(o > 1.95);
}

TEST_CASE("winding jump makes linear fields exact") {
  const auto g = Grid1D::periodic(16, 1.0);
  std::vector<double> y(g.n);
  for (int i = 0; i < g.n; ++i) y[i] = 2.0 * g.x(i);
  for (double d : derivative(g, y, 2.0)) CHECK(d == doctest::Approx(2.0).epsilon(1e-13));
  for (double d : derivative4(g, y, 2.0)) CHECK(d == doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("dirichlet one-sided stencils are exact for quadratics") {
  const auto g = Grid1D::dirichlet(12, 1.0);
  std::vector<double> f(g.n);
  for (int i = 0; i < g.n; ++i) f[i] = 3.0 * g.x(i) * g.x(i) - g.x(i);
  const auto d = derivative(g, f);
  for (int i = 0; i < g.n; ++i) CHECK(d[i] == doctest::Approx(6.0 * g.x(i) - 1.0).epsilon(1e-12));
  CHECK_THROWS_AS(derivative4(g, f), std::invalid_argument);
}

TEST_CASE("quadrature rules") {
  const auto p = Grid1D::periodic(32, 1.0);
  // Rectangle rule integrates low trigonometric modes exactly.
  CHECK(std::abs(integrate(p, samples(p, wave))) < 1e-14);
  CHECK(integrate(p, std::vector<double>(32, 2.0)) == doctest::Approx(2.0));
  const auto d = Grid1D::dirichlet(11, 1.0);
  std::vector<double> lin(d.n);
  for (int i = 0; i < d.n; ++i) lin[i] = 1.0 + d.x(i);
  CHECK(integrate(d, lin) == doctest::Approx(1.5).epsilon(1e-14));
  const auto w = quadrature_weights(d);
  CHECK(w.front() == doctest::Approx(0.05));
  CHECK(w[5] == doctest::Approx(0.1));
  CHECK(integrate(d, lin, NodeRange{0, 6}) == doctest::Approx(0.5 * (1.0 + 1.5) * 0.5).epsilon(1e-14));
}

TEST_CASE("monotone cubic") {
  std::vector<double> x{0.0, 1.0, 2.0, 3.0}, f{0.0, 1.0, 1.2, 3.0}, m{1.0, 5.0, 5.0, 1.0};
  const MonotoneCubic c(x, f, m);
  double prev = c(0.0);
  for (int k = 1; k <= 300; ++k) {
    const double v = c(0.01 * k);
    CHECK(v >= prev - 1e-14);
    prev = v;
  }
  CHECK(c(2.0) == doctest::Approx(1.2));
  CHECK(c(c.inverse(2.2)) == doctest::Approx(2.2).epsilon(1e-12));

  // Exact admissible slopes of a smooth increasing function give fourth order.
  auto err = [](int n) {
    std::vector<double> xs(n + 1), fs(n + 1), ms(n + 1);
    for (int i = 0; i <= n; ++i) {
      xs[i] = static_cast<double>(i) / n;
      fs[i] = std::exp(xs[i]);
      ms[i] = fs[i];
    }
    const MonotoneCubic mc(xs, fs, ms);
    double e = 0.0;
    for (int k = 0; k < 1000; ++k) e = std::max(e, std::abs(mc(k / 1000.0) - std::exp(k / 1000.0)));
    return e;
  };
  CHECK(std::log2(err(16) / err(32)) > 3.8);
}

TEST_CASE("periodic cubic interpolates with winding") {
  const auto g = Grid1D::periodic(64, 1.0);
  std::vector<double> f(g.n);
  for (int i = 0; i < g.n; ++i) f[i] = g.x(i) + 0.1 * std::sin(kTwoPi * g.x(i));
  const double x = 1.03;  // past the end of the period
  const double exact = x + 0.1 * std::sin(kTwoPi * x);
  CHECK(std::abs(periodic_cubic(f, g.origin, g.h, x, 1.0) - exact) < 1e-6);
}

TEST_CASE("trigonometric interpolant is exact for band-limited data") {
  for (int n : {16, 17}) {
    const auto g = Grid1D::periodic(n, 2.0, 0.25);
    const double k = kTwoPi / 2.0;
    auto f = [&](double x) { return 0.5 * x + 0.2 * std::sin(k * x) - 0.1 * std::cos(3.0 * k * x) + 0.7; };
    auto df = [&](double x) { return 0.5 + 0.2 * k * std::cos(k * x) + 0.3 * k * std::sin(3.0 * k * x); };
    std::vector<double> s(n);
    for (int i = 0; i < n; ++i) s[i] = f(g.x(i));
    const TrigInterpolant ti(s, g.origin, g.h, 1.0);
    for (double x : {0.0, 0.31, 1.777, 2.9, -0.6}) {
      CHECK(std::abs(ti(x) - f(x)) < 1e-13);
      CHECK(std::abs(ti.derivative(x) - df(x)) < 1e-12);
    }
    const auto nd = ti.node_derivative();
    for (int i = 0; i < n; ++i) CHECK(std::abs(nd[i] - df(g.x(i))) < 1e-12);
  }
}

TEST_CASE("trigonometric interpolant converges spectrally for smooth data") {
  auto err = [](int n) {
    const auto g = Grid1D::periodic(n, 1.0);
    std::vector<double> s(n);
    for (int i = 0; i < n; ++i) s[i] = std::exp(std::sin(kTwoPi * g.x(i)));
    const TrigInterpolant ti(s, 0.0, g.h);
    double e = 0.0;
    for (int k = 0; k < 97; ++k) {
      const double x = k / 97.0;
      e = std::max(e, std::abs(ti(x) - std::exp(std::sin(kTwoPi * x))));
    }
    return e;
  };
  CHECK(err(8) > 1e-4);
  CHECK(err(32) < 1e-13);
}

TEST_CASE("diagnostic report") {
  DiagnosticReport r{"t", {}};
  CHECK(r.passed());
  r.add("a", -1e-3, 1e-2);
  r.note("b", 5.0);
  CHECK(r.passed());
  CHECK(r.max_value() == doctest::Approx(5.0));
  r.add("c", 1.0, 0.5);
  CHECK_FALSE(r.passed());
  CHECK(r.to_csv().find("c,") != std::string::npos);
  const std::vector<double> v{-3.0, 2.0};
  CHECK(max_abs(v) == 3.0);
}
