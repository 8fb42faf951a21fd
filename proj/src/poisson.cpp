#include "fieldflow/poisson.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fieldflow {

namespace {

const std::vector<double>& field_of(const CanonicalState& cs, int k) {
  switch (k) {
    case 0: return cs.tau;
    case 1: return cs.y;
    case 2: return cs.pi0;
    default: return cs.pi1;
  }
}

std::vector<double>& field_of(CanonicalState& cs, int k) {
  switch (k) {
    case 0: return cs.tau;
    case 1: return cs.y;
    case 2: return cs.pi0;
    default: return cs.pi1;
  }
}

std::vector<double>& slot_of(PhaseGradient& g, int k) {
  switch (k) {
    case 0: return g.z0;
    case 1: return g.z1;
    case 2: return g.pi0;
    default: return g.pi1;
  }
}

PhaseGradient zero_gradient(int n) {
  PhaseGradient g;
  g.z0.assign(n, 0.0);
  g.z1.assign(n, 0.0);
  g.pi0.assign(n, 0.0);
  g.pi1.assign(n, 0.0);
  return g;
}

}  // namespace

PhaseGradient fd_gradient(const PhaseFunctional& F, const CanonicalState& cs, const std::vector<int>& nodes,
                          double eps) {
  const auto w = quadrature_weights(cs.grid);
  PhaseGradient g = zero_gradient(cs.grid.n);
  CanonicalState probe = cs;
  for (int k = 0; k < 4; ++k) {
    auto& u = field_of(probe, k);
    for (int j : nodes) {
      const double keep = u[j];
      u[j] = keep + eps;
      const double plus = F.value(probe);
      u[j] = keep - eps;
      const double minus = F.value(probe);
      u[j] = keep;
      slot_of(g, k)[j] = (plus - minus) / (2.0 * eps * w[j]);
    }
  }
  return g;
}

PhaseGradient fd_gradient(const PhaseFunctional& F, const CanonicalState& cs, double eps) {
  std::vector<int> all(cs.grid.n);
  for (int i = 0; i < cs.grid.n; ++i) all[i] = i;
  return fd_gradient(F, cs, all, eps);
}

PhaseGradient gradient_of(const PhaseFunctional& F, const CanonicalState& cs) {
  return F.gradient ? F.gradient(cs) : fd_gradient(F, cs);
}

double bracket(const PhaseFunctional& F, const PhaseFunctional& G, const CanonicalState& cs) {
  const auto f = gradient_of(F, cs);
  const auto g = gradient_of(G, cs);
  const auto w = quadrature_weights(cs.grid);
  double sum = 0.0;
  for (int i = 0; i < cs.grid.n; ++i) {
    sum += w[i] * (f.z0[i] * g.pi0[i] + f.z1[i] * g.pi1[i] - g.z0[i] * f.pi0[i] - g.z1[i] * f.pi1[i]);
  }
  return sum;
}

PhaseFunctional bracket_functional(const PhaseFunctional& F, const PhaseFunctional& G) {
  PhaseFunctional r;
  r.name = "{" + F.name + ", " + G.name + "}";
  r.value = [F, G](const CanonicalState& cs) { return bracket(F, G, cs); };
  return r;
}

PhaseFunctional combine(double a, const PhaseFunctional& F1, const PhaseFunctional& F2) {
  PhaseFunctional r;
  r.name = std::to_string(a) + " " + F1.name + " + " + F2.name;
  r.value = [a, F1, F2](const CanonicalState& cs) { return a * F1.value(cs) + F2.value(cs); };
  r.gradient = [a, F1, F2](const CanonicalState& cs) {
    auto g1 = gradient_of(F1, cs);
    const auto g2 = gradient_of(F2, cs);
    for (int k = 0; k < 4; ++k) {
      auto& u = slot_of(g1, k);
      const auto& v = k == 0 ? g2.z0 : k == 1 ? g2.z1 : k == 2 ? g2.pi0 : g2.pi1;
      for (std::size_t i = 0; i < u.size(); ++i) u[i] = a * u[i] + v[i];
    }
    return g1;
  };
  return r;
}

PhaseFunctional linear_functional(PhaseField field, std::vector<double> phi) {
  const int k = static_cast<int>(field);
  PhaseFunctional r;
  r.name = "linear";
  r.value = [k, phi](const CanonicalState& cs) {
    const auto& u = field_of(cs, k);
    std::vector<double> prod(cs.grid.n);
    for (int i = 0; i < cs.grid.n; ++i) prod[i] = phi[i] * u[i];
    return integrate(cs.grid, prod);
  };
  r.gradient = [k, phi](const CanonicalState& cs) {
    PhaseGradient g = zero_gradient(cs.grid.n);
    slot_of(g, k) = phi;
    return g;
  };
  return r;
}

PhaseFunctional hamiltonian_functional(const CanonicalFluid& fluid) {
  PhaseFunctional r;
  r.name = "H_D";
  r.value = [fluid](const CanonicalState& cs) { return total_hamiltonian(cs, fluid); };
  r.gradient = [fluid](const CanonicalState& cs) {
    const auto ev = evaluate_hamiltonian(cs, fluid);
    return PhaseGradient{ev.dH_dz0, ev.dH_dz1, ev.dH_dpi0, ev.dH_dpi1};
  };
  return r;
}

PhaseFunctional mass_functional() {
  PhaseFunctional r;
  r.name = "mass";
  r.value = [](const CanonicalState& cs) { return integrate(cs.grid, derivative(cs.grid, cs.y, cs.y_jump)); };
  r.gradient = [](const CanonicalState& cs) {
    PhaseGradient g = zero_gradient(cs.grid.n);
    g.z1 = variational_transpose(cs.grid, std::vector<double>(cs.grid.n, 1.0));
    return g;
  };
  return r;
}

PhaseFunctional entropy_functional(const CanonicalFluid& fluid) {
  PhaseFunctional r;
  r.name = "entropy";
  const double beta = fluid.constants.beta;
  const bool thermal = fluid.model.thermal();
  r.value = [beta, thermal](const CanonicalState& cs) {
    if (!thermal) return 0.0;
    return integrate(cs.grid, cs.pi0) / beta;
  };
  r.gradient = [beta, thermal](const CanonicalState& cs) {
    PhaseGradient g = zero_gradient(cs.grid.n);
    if (thermal) g.pi0.assign(cs.grid.n, 1.0 / beta);
    return g;
  };
  return r;
}

PhaseFunctional smeared(const SmearedObservable& obs, const CanonicalFluid& fluid, const Grid1D& grid) {
  if (static_cast<int>(obs.window.size()) != grid.n) throw std::invalid_argument("window size does not match grid");
  if (!grid.is_periodic()) {
    const int n = grid.n;
    for (int i : {0, 1, 2, n - 3, n - 2, n - 1}) {
      if (obs.window[i] != 0.0) throw std::invalid_argument("window must vanish near Dirichlet boundaries");
    }
  }
  const auto phi = obs.window;
  const double beta = fluid.constants.beta;
  const bool thermal = fluid.model.thermal();
  PhaseFunctional r;
  switch (obs.kind) {
    case ObservableKind::momentum_density:
      r.name = "P";
      r.value = [phi](const CanonicalState& cs) {
        const auto tau_x = derivative(cs.grid, cs.tau, cs.tau_jump);
        const auto y_x = derivative(cs.grid, cs.y, cs.y_jump);
        std::vector<double> f(cs.grid.n);
        for (int i = 0; i < cs.grid.n; ++i) {
          const double Mv = -(cs.pi0[i] * tau_x[i] + cs.pi1[i] * y_x[i]) / y_x[i];
          f[i] = phi[i] * Mv;
        }
        return integrate(cs.grid, f);
      };
      r.gradient = [phi](const CanonicalState& cs) {
        const int n = cs.grid.n;
        const auto tau_x = derivative(cs.grid, cs.tau, cs.tau_jump);
        const auto y_x = derivative(cs.grid, cs.y, cs.y_jump);
        PhaseGradient g = zero_gradient(n);
        std::vector<double> a_tau(n), a_y(n);
        for (int i = 0; i < n; ++i) {
          const double rho = y_x[i];
          a_tau[i] = -phi[i] * cs.pi0[i] / rho;
          a_y[i] = phi[i] * cs.pi0[i] * tau_x[i] / (rho * rho);
          g.pi0[i] = -phi[i] * tau_x[i] / rho;
          g.pi1[i] = -phi[i];
        }
        g.z0 = variational_transpose(cs.grid, a_tau);
        g.z1 = variational_transpose(cs.grid, a_y);
        return g;
      };
      break;
    case ObservableKind::density:
      r.name = "R";
      r.value = [phi](const CanonicalState& cs) {
        auto y_x = derivative(cs.grid, cs.y, cs.y_jump);
        for (int i = 0; i < cs.grid.n; ++i) y_x[i] *= phi[i];
        return integrate(cs.grid, y_x);
      };
      r.gradient = [phi](const CanonicalState& cs) {
        PhaseGradient g = zero_gradient(cs.grid.n);
        g.z1 = variational_transpose(cs.grid, phi);
        return g;
      };
      break;
    case ObservableKind::entropy:
      r.name = "S";
      r.value = [phi, beta, thermal](const CanonicalState& cs) {
        if (!thermal) return 0.0;
        const auto y_x = derivative(cs.grid, cs.y, cs.y_jump);
        std::vector<double> f(cs.grid.n);
        for (int i = 0; i < cs.grid.n; ++i) f[i] = phi[i] * cs.pi0[i] / (beta * y_x[i]);
        return integrate(cs.grid, f);
      };
      r.gradient = [phi, beta, thermal](const CanonicalState& cs) {
        const int n = cs.grid.n;
        PhaseGradient g = zero_gradient(n);
        if (!thermal) return g;
        const auto y_x = derivative(cs.grid, cs.y, cs.y_jump);
        std::vector<double> a(n);
        for (int i = 0; i < n; ++i) {
          g.pi0[i] = phi[i] / (beta * y_x[i]);
          a[i] = -phi[i] * cs.pi0[i] / (beta * y_x[i] * y_x[i]);
        }
        g.z1 = variational_transpose(cs.grid, a);
        return g;
      };
      break;
  }
  return r;
}

EvolutionCheck evolution_check(const PhaseFunctional& F, const CanonicalState& cs, const CanonicalFluid& fluid,
                               double dt, Scheme scheme) {
  EvolutionCheck c;
  c.bracket = bracket(F, hamiltonian_functional(fluid), cs);
  if (dt == 0.0) {
    c.fd_derivative = c.bracket;
  } else {
    const auto fwd = step(cs, fluid, dt, scheme);
    const auto bwd = step(cs, fluid, -dt, scheme);
    c.fd_derivative = (F.value(fwd) - F.value(bwd)) / (2.0 * dt);
  }
  c.mismatch = std::abs(c.bracket - c.fd_derivative);
  return c;
}

std::vector<BracketAuditRow> reduced_bracket_audit(const CanonicalState& cs, const CanonicalFluid& fluid,
                                                   const std::vector<double>& phi, const std::vector<double>& psi) {
  const auto& grid = cs.grid;
  const int n = grid.n;
  const auto obs = recover_observables(cs, fluid);
  const auto P_phi = smeared({ObservableKind::momentum_density, phi}, fluid, grid);
  const auto P_psi = smeared({ObservableKind::momentum_density, psi}, fluid, grid);
  const auto R_psi = smeared({ObservableKind::density, psi}, fluid, grid);
  const auto S_phi = smeared({ObservableKind::entropy, phi}, fluid, grid);
  const auto S_psi = smeared({ObservableKind::entropy, psi}, fluid, grid);
  const auto dphi = derivative(grid, phi);
  const auto dpsi = derivative(grid, psi);
  const double M = fluid.constants.molar_mass;

  std::vector<double> pr(n), ps(n), pp_table(n), pp_assembled(n);
  for (int i = 0; i < n; ++i) {
    const double p = M * obs.v[i];
    pr[i] = phi[i] * dpsi[i];
    ps[i] = obs.s[i] / obs.rho[i] * phi[i] * dpsi[i];
    pp_table[i] = 2.0 / obs.rho[i] * (p * phi[i] * dpsi[i] - p * phi[i] * dpsi[i]);
    pp_assembled[i] = 4.0 * p / obs.rho[i] * (phi[i] * dpsi[i] - psi[i] * dphi[i]);
  }
  auto row = [](std::string name, double canonical, double reduced) {
    BracketAuditRow r{std::move(name), canonical, reduced, std::abs(canonical - reduced), 0.0};
    const double scale = std::max(std::abs(canonical), std::abs(reduced));
    r.rel_diff = scale > 0.0 ? r.abs_diff / scale : 0.0;
    return r;
  };
  const double pp = bracket(P_phi, P_psi, cs);
  return {
      row("{P_phi,R_psi}", bracket(P_phi, R_psi, cs), integrate(grid, pr)),
      row("{P_phi,S_psi}", bracket(P_phi, S_psi, cs), integrate(grid, ps)),
      row("{S_phi,R_psi}", bracket(S_phi, R_psi, cs), 0.0),
      row("{P_phi,P_psi} table 2/rho", pp, integrate(grid, pp_table)),
      row("{P_phi,P_psi} assembled 4p/rho", pp, integrate(grid, pp_assembled)),
  };
}

std::string audit_csv(const std::vector<BracketAuditRow>& rows) {
  std::ostringstream out;
  out.precision(12);
  out << "pair,canonical_value,reduced_form_value,abs_diff,rel_diff\n";
  for (const auto& r : rows) {
    out << '"' << r.pair << '"' << ',' << r.canonical << ',' << r.reduced_form << ',' << r.abs_diff << ','
        << r.rel_diff << '\n';
  }
  return out.str();
}

CanonicalState gauge_shift(const CanonicalState& cs, double dy, double dtau) {
  CanonicalState r = cs;
  for (auto& y : r.y) y += dy;
  for (auto& t : r.tau) t += dtau;
  if (r.control) {
    r.control->y_left += dy;
    r.control->y_right += dy;
    r.control->tau_left += dtau;
    r.control->tau_right += dtau;
  }
  return r;
}

}  // namespace fieldflow
