#include "fieldflow/interpolation.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include <fftw3.h>

namespace fieldflow {

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> f, std::vector<double> slope)
    : x_(std::move(x)), f_(std::move(f)), m_(std::move(slope)) {
  const std::size_t n = x_.size();
  if (n < 2 || f_.size() != n || m_.size() != n) {
    throw std::invalid_argument("MonotoneCubic: need matching samples, at least two");
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!(x_[i + 1] > x_[i])) throw std::invalid_argument("MonotoneCubic: abscissae must increase");
    if (!(f_[i + 1] > f_[i])) throw std::invalid_argument("MonotoneCubic: samples are not monotone increasing");
  }
  for (auto& m : m_) m = std::max(m, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double delta = (f_[i + 1] - f_[i]) / (x_[i + 1] - x_[i]);
    const double a = m_[i] / delta;
    const double b = m_[i + 1] / delta;
    const double r2 = a * a + b * b;
    if (r2 > 9.0) {
      const double t = 3.0 / std::sqrt(r2);
      m_[i] = t * a * delta;
      m_[i + 1] = t * b * delta;
    }
  }
}

std::size_t MonotoneCubic::segment(double x) const {
  auto it = std::upper_bound(x_.begin(), x_.end(), x);
  std::size_t i = it == x_.begin() ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
  return std::min(i, x_.size() - 2);
}

double MonotoneCubic::operator()(double x) const {
  const std::size_t i = segment(x);
  const double hseg = x_[i + 1] - x_[i];
  const double t = (x - x_[i]) / hseg;
  const double t2 = t * t, t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * f_[i] + (t3 - 2 * t2 + t) * hseg * m_[i] + (-2 * t3 + 3 * t2) * f_[i + 1] +
         (t3 - t2) * hseg * m_[i + 1];
}

double MonotoneCubic::derivative(double x) const {
  const std::size_t i = segment(x);
  const double hseg = x_[i + 1] - x_[i];
  const double t = (x - x_[i]) / hseg;
  const double t2 = t * t;
  return ((6 * t2 - 6 * t) * f_[i] + (-6 * t2 + 6 * t) * f_[i + 1]) / hseg + (3 * t2 - 4 * t + 1) * m_[i] +
         (3 * t2 - 2 * t) * m_[i + 1];
}

double MonotoneCubic::inverse(double target) const {
  if (target < f_.front() || target > f_.back()) {
    throw std::domain_error("MonotoneCubic::inverse: target outside the sampled range");
  }
  auto it = std::upper_bound(f_.begin(), f_.end(), target);
  std::size_t i = it == f_.begin() ? 0 : static_cast<std::size_t>(it - f_.begin()) - 1;
  i = std::min(i, x_.size() - 2);
  double lo = x_[i], hi = x_[i + 1];
  double x = lo + (target - f_[i]) / (f_[i + 1] - f_[i]) * (hi - lo);
  for (int it2 = 0; it2 < 100; ++it2) {
    const double g = (*this)(x) - target;
    if (g == 0.0) return x;
    if (g < 0.0) lo = x; else hi = x;
    const double dg = derivative(x);
    double next = dg > 0.0 ? x - g / dg : 0.5 * (lo + hi);
    if (!(next >= lo && next <= hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= 1e-16 * std::max(1.0, std::abs(x))) return next;
    x = next;
  }
  return x;
}

double periodic_cubic(std::span<const double> f, double origin, double h, double x, double jump) {
  const int n = static_cast<int>(f.size());
  const double s = (x - origin) / h;
  const int i = static_cast<int>(std::floor(s));
  const double t = s - i;
  auto sample = [&](int j) {
    const int wraps = (j >= 0) ? j / n : -((-j + n - 1) / n);
    return f[j - wraps * n] + wraps * jump;
  };
  const double fm = sample(i - 1), f0 = sample(i), f1 = sample(i + 1), f2 = sample(i + 2);
  const double wm = -t * (t - 1.0) * (t - 2.0) / 6.0;
  const double w0 = (t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0;
  const double w1 = -(t + 1.0) * t * (t - 2.0) / 2.0;
  const double w2 = (t + 1.0) * t * (t - 1.0) / 6.0;
  return wm * fm + w0 * f0 + w1 * f1 + w2 * f2;
}

TrigInterpolant::TrigInterpolant(std::span<const double> f, double origin, double h, double jump)
    : n_(static_cast<int>(f.size())), origin_(origin), period_(h * static_cast<double>(f.size())) {
  if (n_ < 4) throw std::invalid_argument("TrigInterpolant: need at least four samples");
  slope_ = jump / period_;
  std::vector<double> periodic(n_);
  for (int j = 0; j < n_; ++j) periodic[j] = f[j] - slope_ * h * j;
  const int m = n_ / 2 + 1;
  std::vector<fftw_complex> spectrum(m);
  fftw_plan plan = fftw_plan_dft_r2c_1d(n_, periodic.data(), spectrum.data(), FFTW_ESTIMATE);
  fftw_execute(plan);
  fftw_destroy_plan(plan);
  re_.resize(m);
  im_.resize(m);
  for (int k = 0; k < m; ++k) {
    // Halve interior modes so that f = Re(c_0) + 2 Re(sum c_k e^{ik theta}) with a single Nyquist term.
    const bool paired = k > 0 && !(n_ % 2 == 0 && k == n_ / 2);
    const double scale = (paired ? 1.0 : 0.5) / n_;
    re_[k] = spectrum[k][0] * scale;
    im_[k] = spectrum[k][1] * scale;
  }
}

double TrigInterpolant::operator()(double x) const {
  const double theta = 2.0 * std::numbers::pi * (x - origin_) / period_;
  const std::complex<double> step = std::polar(1.0, theta);
  std::complex<double> e(1.0, 0.0);
  double sum = 0.0;
  for (std::size_t k = 0; k < re_.size(); ++k) {
    sum += 2.0 * (re_[k] * e.real() - im_[k] * e.imag());
    e *= step;
  }
  return sum + slope_ * (x - origin_);
}

double TrigInterpolant::derivative(double x) const {
  const double w = 2.0 * std::numbers::pi / period_;
  const double theta = w * (x - origin_);
  const std::complex<double> step = std::polar(1.0, theta);
  std::complex<double> e(1.0, 0.0);
  double sum = 0.0;
  for (std::size_t k = 0; k < re_.size(); ++k) {
    // d/dx Re(c e^{ik theta}) = -k w Im(c e^{ik theta})
    sum -= 2.0 * w * static_cast<double>(k) * (re_[k] * e.imag() + im_[k] * e.real());
    e *= step;
  }
  return sum + slope_;
}

std::vector<double> TrigInterpolant::node_derivative() const {
  const int m = n_ / 2 + 1;
  const double w = 2.0 * std::numbers::pi / period_;
  std::vector<fftw_complex> spectrum(m);
  for (int k = 0; k < m; ++k) {
    const bool nyquist = n_ % 2 == 0 && k == n_ / 2;
    const bool paired = k > 0 && !nyquist;
    // Undo the halving; i k w c_k, with the Nyquist mode dropped (its derivative vanishes at the nodes).
    const double scale = nyquist ? 0.0 : (paired ? 1.0 : 2.0) * k * w;
    spectrum[k][0] = -im_[k] * scale;
    spectrum[k][1] = re_[k] * scale;
  }
  std::vector<double> out(n_);
  fftw_plan plan = fftw_plan_dft_c2r_1d(n_, spectrum.data(), out.data(), FFTW_ESTIMATE);
  fftw_execute(plan);
  fftw_destroy_plan(plan);
  for (auto& v : out) v += slope_;
  return out;
}

}  // namespace fieldflow
