#include "fieldflow/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace fieldflow {

void DiagnosticReport::add(std::string name, double value, double threshold) {
  const bool ok = std::isfinite(value) && std::abs(value) <= threshold;
  entries.push_back({std::move(name), value, threshold, ok});
}

void DiagnosticReport::note(std::string name, double value) {
  entries.push_back({std::move(name), value, std::nan(""), true});
}

bool DiagnosticReport::passed() const {
  return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.passed; });
}

double DiagnosticReport::max_value() const {
  double m = 0.0;
  for (const auto& e : entries) m = std::max(m, std::abs(e.value));
  return m;
}

std::string DiagnosticReport::to_csv() const {
  std::ostringstream out;
  out.precision(12);
  out << "name,value,threshold,passed\n";
  for (const auto& e : entries) {
    out << e.name << ',' << e.value << ',' << e.threshold << ',' << (e.passed ? 1 : 0) << '\n';
  }
  return out.str();
}

double convergence_order(std::span<const double> spacing, std::span<const double> error) {
  if (spacing.size() != error.size() || spacing.size() < 2) {
    throw std::invalid_argument("convergence_order: need at least two matched samples");
  }
  const auto n = static_cast<double>(spacing.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < spacing.size(); ++i) {
    const double x = std::log(spacing[i]);
    const double y = std::log(error[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::vector<double> pairwise_orders(std::span<const double> spacing, std::span<const double> error) {
  std::vector<double> orders;
  for (std::size_t i = 0; i + 1 < spacing.size(); ++i) {
    orders.push_back(std::log(error[i] / error[i + 1]) / std::log(spacing[i] / spacing[i + 1]));
  }
  return orders;
}

double max_abs(std::span<const double> values) {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace fieldflow
