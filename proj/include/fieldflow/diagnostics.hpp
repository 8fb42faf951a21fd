#pragma once

#include <span>
#include <string>
#include <vector>

namespace fieldflow {

struct DiagnosticEntry {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool passed = true;
};

/// Named residuals with their thresholds. A report with no entries passes.
struct DiagnosticReport {
  std::string title;
  std::vector<DiagnosticEntry> entries;

  /// Records |value| <= threshold.
  void add(std::string name, double value, double threshold);
  /// Records a value that is reported but not judged.
  void note(std::string name, double value);

  bool passed() const;
  double max_value() const;
  std::string to_csv() const;
};

/// Least-squares slope of log(error) against log(spacing).
double convergence_order(std::span<const double> spacing, std::span<const double> error);

/// Orders between consecutive refinements: log(e_i / e_{i+1}) / log(h_i / h_{i+1}).
std::vector<double> pairwise_orders(std::span<const double> spacing, std::span<const double> error);

double max_abs(std::span<const double> values);

}  // namespace fieldflow
