#pragma once

#include <functional>
#include <string>
#include <vector>

#include "fieldflow/diagnostics.hpp"
#include "fieldflow/hamiltonian.hpp"

namespace fieldflow {

/// Grid functional derivatives dF/du_i / w_i for u in (tau, y, pi0, pi1).
struct PhaseGradient {
  std::vector<double> z0, z1, pi0, pi1;
};

/// Scalar functional on phase space. Without an analytic gradient the
/// node-perturbation difference quotient is used.
struct PhaseFunctional {
  std::string name;
  std::function<double(const CanonicalState&)> value;
  std::function<PhaseGradient(const CanonicalState&)> gradient;
};

inline constexpr double kFunctionalStep = 1e-5;

/// Central difference (F(u + eps e_j) - F(u - eps e_j)) / (2 eps w_j) at every node.
PhaseGradient fd_gradient(const PhaseFunctional& F, const CanonicalState& cs, double eps = kFunctionalStep);
/// Only at the listed nodes; the remaining entries are left at zero.
PhaseGradient fd_gradient(const PhaseFunctional& F, const CanonicalState& cs, const std::vector<int>& nodes,
                          double eps = kFunctionalStep);
PhaseGradient gradient_of(const PhaseFunctional& F, const CanonicalState& cs);

/// sum_i w_i (dF/dz dG/dpi - dG/dz dF/dpi).
double bracket(const PhaseFunctional& F, const PhaseFunctional& G, const CanonicalState& cs);

/// The functional cs -> {F, G}(cs) (gradient by node perturbation).
PhaseFunctional bracket_functional(const PhaseFunctional& F, const PhaseFunctional& G);
/// a F1 + F2.
PhaseFunctional combine(double a, const PhaseFunctional& F1, const PhaseFunctional& F2);

enum class PhaseField { tau, y, pi0, pi1 };
/// sum_i w_i phi_i u_i.
PhaseFunctional linear_functional(PhaseField field, std::vector<double> phi);

PhaseFunctional hamiltonian_functional(const CanonicalFluid& fluid);
PhaseFunctional mass_functional();
PhaseFunctional entropy_functional(const CanonicalFluid& fluid);

enum class ObservableKind { momentum_density, density, entropy };

/// Observable p = M v, rho or s smeared against a window on the grid.
struct SmearedObservable {
  ObservableKind kind = ObservableKind::density;
  std::vector<double> window;
};

/// Throws std::invalid_argument when the window does not vanish near a Dirichlet boundary.
PhaseFunctional smeared(const SmearedObservable& obs, const CanonicalFluid& fluid, const Grid1D& grid);

struct EvolutionCheck {
  double bracket = 0.0;
  double fd_derivative = 0.0;
  double mismatch = 0.0;
};

/// {F, H_D} against (F(step(dt)) - F(step(-dt))) / 2dt.
EvolutionCheck evolution_check(const PhaseFunctional& F, const CanonicalState& cs, const CanonicalFluid& fluid,
                               double dt, Scheme scheme = Scheme::implicit_midpoint);

struct BracketAuditRow {
  std::string pair;
  double canonical = 0.0;
  double reduced_form = 0.0;
  double abs_diff = 0.0;
  double rel_diff = 0.0;
};

/// Canonical brackets of smeared (p, rho, s) against the reduced-bracket forms
/// {p, rho} = d delta, {p, s} = (s/rho) d delta, {s, rho} = 0,
/// {p_k, p_l} = (2/rho)[p_k d_l delta - p_l d_k delta] and the assembled
/// quotient formula whose p-p term carries 4 p_k / rho.
std::vector<BracketAuditRow> reduced_bracket_audit(const CanonicalState& cs, const CanonicalFluid& fluid,
                                                   const std::vector<double>& phi, const std::vector<double>& psi);

std::string audit_csv(const std::vector<BracketAuditRow>& rows);

/// Shifts y and tau by constants (relabelings that leave (rho, v, s) unchanged).
CanonicalState gauge_shift(const CanonicalState& cs, double dy, double dtau);

}  // namespace fieldflow
