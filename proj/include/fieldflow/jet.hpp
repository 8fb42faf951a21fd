#pragma once

#include <array>
#include <cmath>

namespace fieldflow {

/// First-order forward jet: a value together with its partial derivatives
/// along N independent directions. Pointwise evaluators are templated on the
/// scalar type, so instantiating them with a Jet whose seed derivatives are the
/// exact second derivatives of a field yields exact first derivatives of every
/// derived quantity (momenta, tensors) along the chosen directions.
template <int N>
struct Jet {
  double v = 0.0;
  std::array<double, N> d{};

  Jet() = default;
  Jet(double value) : v(value) {}  // NOLINT: constants mix freely
  Jet(double value, const std::array<double, N>& grad) : v(value), d(grad) {}

  Jet& operator+=(const Jet& o) {
    v += o.v;
    for (int i = 0; i < N; ++i) d[i] += o.d[i];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    v -= o.v;
    for (int i = 0; i < N; ++i) d[i] -= o.d[i];
    return *this;
  }
  Jet& operator*=(const Jet& o) {
    for (int i = 0; i < N; ++i) d[i] = d[i] * o.v + v * o.d[i];
    v *= o.v;
    return *this;
  }
  Jet& operator/=(const Jet& o) {
    const double inv = 1.0 / o.v;
    for (int i = 0; i < N; ++i) d[i] = (d[i] - v * inv * o.d[i]) * inv;
    v *= inv;
    return *this;
  }
};

template <int N> Jet<N> operator+(Jet<N> a, const Jet<N>& b) { return a += b; }
template <int N> Jet<N> operator-(Jet<N> a, const Jet<N>& b) { return a -= b; }
template <int N> Jet<N> operator*(Jet<N> a, const Jet<N>& b) { return a *= b; }
template <int N> Jet<N> operator/(Jet<N> a, const Jet<N>& b) { return a /= b; }
template <int N> Jet<N> operator+(Jet<N> a, double b) { return a += Jet<N>(b); }
template <int N> Jet<N> operator-(Jet<N> a, double b) { return a -= Jet<N>(b); }
template <int N> Jet<N> operator*(Jet<N> a, double b) { return a *= Jet<N>(b); }
template <int N> Jet<N> operator/(Jet<N> a, double b) { return a /= Jet<N>(b); }
template <int N> Jet<N> operator+(double a, const Jet<N>& b) { return Jet<N>(a) += b; }
template <int N> Jet<N> operator-(double a, const Jet<N>& b) { return Jet<N>(a) -= b; }
template <int N> Jet<N> operator*(double a, const Jet<N>& b) { return Jet<N>(a) *= b; }
template <int N> Jet<N> operator/(double a, const Jet<N>& b) { return Jet<N>(a) /= b; }
template <int N> Jet<N> operator-(const Jet<N>& a) { return Jet<N>(0.0) -= a; }

inline double value_of(double x) { return x; }
template <int N> double value_of(const Jet<N>& x) { return x.v; }

/// Chain rule for a scalar function with known value f and slope df at x.
inline double lift(double, double f, double) { return f; }
template <int N>
Jet<N> lift(const Jet<N>& x, double f, double df) {
  Jet<N> r(f);
  for (int i = 0; i < N; ++i) r.d[i] = df * x.d[i];
  return r;
}

/// Chain rule for a function of two arguments with partials (fa, fb).
inline double lift(double, double, double f, double, double) { return f; }
template <int N>
Jet<N> lift(const Jet<N>& a, const Jet<N>& b, double f, double fa, double fb) {
  Jet<N> r(f);
  for (int i = 0; i < N; ++i) r.d[i] = fa * a.d[i] + fb * b.d[i];
  return r;
}

template <int N> Jet<N> sqrt(const Jet<N>& x) {
  const double s = std::sqrt(x.v);
  return lift(x, s, 0.5 / s);
}
template <int N> Jet<N> exp(const Jet<N>& x) {
  const double e = std::exp(x.v);
  return lift(x, e, e);
}
template <int N> Jet<N> log(const Jet<N>& x) { return lift(x, std::log(x.v), 1.0 / x.v); }
template <int N> Jet<N> pow(const Jet<N>& x, double p) {
  return lift(x, std::pow(x.v, p), p * std::pow(x.v, p - 1.0));
}
template <int N> Jet<N> sin(const Jet<N>& x) { return lift(x, std::sin(x.v), std::cos(x.v)); }
template <int N> Jet<N> cos(const Jet<N>& x) { return lift(x, std::cos(x.v), -std::sin(x.v)); }

}  // namespace fieldflow
