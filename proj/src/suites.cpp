#include "fieldflow/suites.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "fieldflow/scenario.hpp"

namespace fieldflow {

namespace {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }

void merge(DiagnosticReport& into, const DiagnosticReport& from, const std::string& prefix) {
  for (auto e : from.entries) {
    e.name = prefix + e.name;
    into.entries.push_back(e);
  }
}

// Labels or placements near the identity with a drift: f = x + slope_t t + waves.
SmoothField near_identity(Rng& rng, double drift) {
  return SmoothField::random(rng, 1.0, uniform(rng, -drift, drift), 1.0, 0.3);
}

// Material time advancing at a rate near one.
SmoothField clock_field(Rng& rng) { return SmoothField::random(rng, 0.0, 1.0, 1.0, 0.2); }

template <class State>
History<State> three_levels(const Grid1D& g, const SmoothField& f, double t, double dt) {
  return {{g, sample(f, g, t - dt)}, {g, sample(f, g, t)}, {g, sample(f, g, t + dt)}, dt};
}

SmoothField static_field(Rng& rng) {
  std::vector<Wave> waves;
  for (int m = 1; m <= 3; ++m) {
    const double k = 2.0 * std::numbers::pi * m;
    waves.push_back({uniform(rng, -0.1, 0.1) / k, k, 0.0, uniform(rng, 0.0, 6.0)});
  }
  return SmoothField(uniform(rng, -1.0, 1.0), 1.0, 0.0, waves);
}

}  // namespace

DiagnosticReport lagrange_identities(const BarotropicFluid& fluid, const SuiteOptions& opt) {
  Rng rng(opt.seed);
  DiagnosticReport r;
  r.title = "lagrange picture identities";
  double noether = 0.0, dependency = 0.0, dvy = 0.0;
  for (int s = 0; s < opt.states; ++s) {
    const auto x = near_identity(rng, 0.5);
    for (int p = 0; p < opt.points; ++p) {
      const auto d = x.at(uniform(rng, 0.0, 1.0), uniform(rng, 0.0, 1.0));
      noether = std::max(noether, noether_lagrange(d, fluid).residual());
      const auto dep = dependency_lagrange(d, fluid);
      dependency = std::max(dependency, std::abs(dep.lhs - dep.rhs));
    }
    const auto map = SmoothMap<3>::random(rng, 0.3);
    for (int p = 0; p < opt.points; ++p) {
      const auto g = map.gradient_jet({uniform(rng, 0.0, 1.0), uniform(rng, 0.0, 1.0), uniform(rng, 0.0, 1.0)});
      for (double c : piola_divergence<3>(g)) dvy = std::max(dvy, std::abs(c));
    }
  }
  r.add("noether analytic", noether, opt.analytic_tolerance);
  r.add("dependency analytic", dependency, opt.analytic_tolerance);
  r.add("d_a(V y^a_k) analytic", dvy, opt.analytic_tolerance);

  const auto g = Grid1D::periodic(opt.n, 1.0);
  const auto x = near_identity(rng, 0.5);
  const auto h = three_levels<LagrangeFieldState>(g, x, 0.3, 0.5 * g.h);
  r.note("noether fd", noether_residual(h, fluid).max_residual());
  r.note("dependency fd", dependency_check(h, fluid));
  merge(r, lagrange_to_euler(h.current, fluid, opt.transform_tolerance).report, "transform: ");

  const EulerFieldState rest{g, sample(static_field(rng), g, 0.0)};
  merge(r, rest_frame_correspondence(rest, fluid, opt.rest_frame_tolerance), "rest frame: ");
  return r;
}

DiagnosticReport euler_identities(const BarotropicFluid& fluid, const SuiteOptions& opt) {
  Rng rng(opt.seed);
  DiagnosticReport r;
  r.title = "euler picture identities";
  double noether = 0.0, dependency = 0.0, continuity = 0.0;
  for (int s = 0; s < opt.states; ++s) {
    const auto y = near_identity(rng, 0.5);
    for (int p = 0; p < opt.points; ++p) {
      const auto d = y.at(uniform(rng, 0.0, 1.0), uniform(rng, 0.0, 1.0));
      noether = std::max(noether, noether_euler(d, fluid).residual());
      const auto dep = dependency_euler(d, fluid);
      dependency = std::max(dependency, std::abs(dep.lhs - dep.rhs));
    }
    const auto labels = SmoothMap<4>::random(rng, 0.3);
    for (int p = 0; p < opt.points; ++p) {
      const auto grad = labels.gradient_jet(
          {uniform(rng, 0.0, 1.0), uniform(rng, 0.0, 1.0), uniform(rng, 0.0, 1.0), uniform(rng, 0.0, 1.0)});
      const auto j = matter_current<Jet<4>>(grad);
      double div = 0.0;
      for (int k = 0; k < 4; ++k) div += j[k].d[k];
      continuity = std::max(continuity, std::abs(div));
    }
  }
  r.add("noether analytic", noether, opt.analytic_tolerance);
  r.add("dependency analytic", dependency, opt.analytic_tolerance);
  r.add("continuity analytic", continuity, opt.analytic_tolerance);

  const auto g = Grid1D::periodic(opt.n, 1.0);
  const auto y = near_identity(rng, 0.5);
  const auto h = three_levels<EulerFieldState>(g, y, 0.3, 0.5 * g.h);
  r.note("noether fd", noether_residual(h, fluid).max_residual());
  r.note("dependency fd", dependency_check(h, fluid));
  r.note("continuity fd", continuity_residual(g, {h.previous.y, h.current.y, h.next.y}, h.dt));
  merge(r, euler_to_lagrange(h.current, fluid, opt.transform_tolerance).report, "transform: ");

  const EulerFieldState rest{g, sample(static_field(rng), g, 0.0)};
  merge(r, rest_frame_correspondence(rest, fluid, opt.rest_frame_tolerance), "rest frame: ");
  return r;
}

DiagnosticReport thermo_identities(const ThermalFluid& fluid, const SuiteOptions& opt) {
  Rng rng(opt.seed);
  DiagnosticReport r;
  r.title = "thermal euler picture identities";
  double noether = 0.0, forms = 0.0, entropy = 0.0;
  for (int s = 0; s < opt.states; ++s) {
    const auto tau = clock_field(rng);
    const auto y = near_identity(rng, 0.5);
    for (int p = 0; p < opt.points; ++p) {
      const double t = uniform(rng, 0.0, 1.0), x = uniform(rng, 0.0, 1.0);
      const auto dt = tau.at(t, x), dy = y.at(t, x);
      noether = std::max(noether, noether4(dt, dy, fluid).residual());
      const auto f = thermo_field_exact(dt, dy, fluid);
      forms = std::max(forms, std::abs(f.conservative - f.expanded));
      entropy = std::max(entropy, std::abs(f.entropy_divergence - f.entropy_advective));
    }
  }
  r.add("noether analytic", noether, opt.analytic_tolerance);
  r.add("conservative - expanded analytic", forms, opt.analytic_tolerance);
  r.add("entropy divergence - advective analytic", entropy, opt.analytic_tolerance);

  const auto g = Grid1D::periodic(opt.n, 1.0);
  const auto tau = clock_field(rng);
  const auto y = near_identity(rng, 0.5);
  const double t0 = 0.3, step = 0.5 * g.h;
  const History<ThermoFieldState> h{{g, sample(tau, g, t0 - step), sample(y, g, t0 - step)},
                                    {g, sample(tau, g, t0), sample(y, g, t0)},
                                    {g, sample(tau, g, t0 + step), sample(y, g, t0 + step)},
                                    step};
  r.note("noether fd", noether4_residual(h, fluid).max_residual());

  // Rest state: static labels, clock running at a nonuniform temperature.
  GridField rest_tau{std::vector<double>(g.n, 0.0), std::vector<double>(g.n), 0.0};
  for (int i = 0; i < g.n; ++i) rest_tau.rate[i] = 1.0 + 0.2 * std::sin(2.0 * std::numbers::pi * g.x(i));
  const auto cs = to_canonical(ThermoFieldState{g, rest_tau, sample(static_field(rng), g, 0.0)}, fluid);
  merge(r, rest_frame_reduction(cs, CanonicalFluid::from(fluid), kRestFrameProbe, opt.reduction_tolerance),
        "rest frame reduction: ");
  return r;
}

DiagnosticReport complete_lagrange_identities(const CompleteLagrangeFluid& fluid, const SuiteOptions& opt) {
  Rng rng(opt.seed);
  DiagnosticReport r;
  r.title = "complete lagrange picture identities";
  const int samples = 5 * opt.states;
  double worst_identity = 0.0, worst_e = 0.0, worst_V = 0.0;
  int worst_iterations = 0;
  for (int k = 0; k < samples; ++k) {
    const double t_tau = uniform(rng, 0.5, 2.0), chi = uniform(rng, 0.5, 2.0);
    const double v = uniform(rng, -0.5, 0.5), w = uniform(rng, -0.3, 0.3);
    const SpacetimeJacobian X{t_tau, w * chi, v * t_tau, chi};
    worst_identity = std::max(worst_identity, cl_identities(X, fluid).max_value());
    const auto pt = cl_point(X, fluid);
    const auto inv = invert_canonical(canonical_pi(pt), pt.cw, fluid);
    worst_e = std::max(worst_e, std::abs(inv.e - pt.e) / std::max(1.0, std::abs(pt.e)));
    worst_V = std::max(worst_V, std::abs(inv.V - pt.k.V) / std::max(1.0, std::abs(pt.k.V)));
    worst_iterations = std::max(worst_iterations, inv.iterations);
  }
  r.add("point identities", worst_identity, opt.analytic_tolerance);
  r.add("inversion e round trip", worst_e, opt.analytic_tolerance);
  r.add("inversion V round trip", worst_V, opt.analytic_tolerance);
  r.add("inversion iterations over 10", std::max(0, worst_iterations - 10), 0.0);

  double reduction = 0.0;
  for (int k = 0; k < opt.states; ++k) {
    const SpacetimeJacobian X{uniform(rng, 0.5, 2.0), 0.0, 0.0, uniform(rng, 0.5, 2.0)};
    reduction = std::max(reduction, rest_frame_reduction_cl(X, fluid, kClProbe, opt.reduction_tolerance).max_value());
  }
  r.add("rest frame reduction", reduction, opt.reduction_tolerance);

  const auto g = Grid1D::periodic(opt.n, 1.0);
  const auto tau = clock_field(rng);
  const auto y = near_identity(rng, 0.5);
  const ThermoFieldState snap{g, sample(tau, g, 0.3), sample(y, g, 0.3)};
  merge(r, transform_from_euler(snap, 0.3, fluid, opt.transform_tolerance).report, "transform: ");
  return r;
}

BarotropicFluid suite_barotropic_fluid(const ScenarioConfig& cfg) {
  const MaterialConstants c{cfg.material.M, cfg.material.beta, 1.0};
  if (cfg.eos.kind == EosKind::polytrope) return {BarotropicEos::polytrope(cfg.eos.K, cfg.eos.gamma), c};
  return {BarotropicEos::polytrope(1.0, 2.0), c};
}

ThermalFluid suite_thermal_fluid(const ScenarioConfig& cfg) {
  const MaterialConstants c{cfg.material.M, cfg.material.beta, 1.0};
  const auto& e = cfg.eos;
  switch (e.kind) {
    case EosKind::entropy_table:
      return {ThermalEos::from_entropy_form(EntropyForm::ideal_gas(e.R, e.c_v, e.V0, e.T0)), c};
    case EosKind::ideal_gas:
      return {ThermalEos::ideal_gas(e.R, e.c_v, e.V0, e.T0), c};
    case EosKind::polytrope:
      break;
  }
  return {ThermalEos::ideal_gas(), c};
}

CompleteLagrangeFluid suite_complete_lagrange_fluid(const ScenarioConfig& cfg) {
  const MaterialConstants c{cfg.material.M, cfg.material.beta, 1.0};
  const auto& e = cfg.eos;
  if (cfg.thermal()) return CompleteLagrangeFluid::ideal_gas(e.R, e.c_v, e.V0, e.T0, c);
  return CompleteLagrangeFluid::ideal_gas(1.0, 1.5, 1.0, 1.0, c);
}

DiagnosticReport identity_suite(IdentityPicture picture, const ScenarioConfig& cfg, const SuiteOptions& opt) {
  switch (picture) {
    case IdentityPicture::lagrange: return lagrange_identities(suite_barotropic_fluid(cfg), opt);
    case IdentityPicture::euler: return euler_identities(suite_barotropic_fluid(cfg), opt);
    case IdentityPicture::thermo: return thermo_identities(suite_thermal_fluid(cfg), opt);
    case IdentityPicture::complete_lagrange:
      return complete_lagrange_identities(suite_complete_lagrange_fluid(cfg), opt);
  }
  throw std::logic_error("unhandled picture");
}

std::vector<double> smooth_window(const Grid1D& grid, double center, double width, double phase) {
  std::vector<double> w(grid.n);
  const double L = grid.length();
  for (int i = 0; i < grid.n; ++i) {
    const double x = grid.x(i);
    if (grid.is_periodic()) {
      const double a = 2.0 * std::numbers::pi * (x - center) / L;
      const double wa = 2.0 * std::numbers::pi * width / L;
      w[i] = std::exp((std::cos(a) - 1.0) / (wa * wa)) * (1.0 + 0.3 * std::sin(a + phase));
    } else {
      const double u = (x - center) / width;
      w[i] = std::exp(-u * u) * (1.0 + 0.3 * std::sin(u + phase));
    }
  }
  if (!grid.is_periodic()) {
    for (int i : {0, 1, 2, grid.n - 3, grid.n - 2, grid.n - 1}) w[i] = 0.0;
  }
  return w;
}

DiagnosticReport functional_derivative_check(const CanonicalState& cs, const CanonicalFluid& fluid, int count,
                                             std::uint64_t seed, double tolerance) {
  Rng rng(seed);
  const int n = cs.grid.n;
  std::vector<int> nodes;
  std::uniform_int_distribution<int> pick(0, n - 1);
  for (int k = 0; k < count; ++k) nodes.push_back(pick(rng));
  const auto H = hamiltonian_functional(fluid);
  const auto exact = gradient_of(H, cs);
  const auto fd = fd_gradient(H, cs, nodes);
  auto worst = [&](const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (int i : nodes) m = std::max(m, std::abs(a[i] - b[i]) / std::max(1.0, std::abs(a[i])));
    return m;
  };
  DiagnosticReport r;
  r.title = "variational derivatives of H_D";
  r.add("dH/dtau", worst(exact.z0, fd.z0), tolerance);
  r.add("dH/dy", worst(exact.z1, fd.z1), tolerance);
  r.add("dH/dpi0", worst(exact.pi0, fd.pi0), tolerance);
  r.add("dH/dpi1", worst(exact.pi1, fd.pi1), tolerance);
  return r;
}

BracketSuite bracket_suite(const CanonicalState& cs, const CanonicalFluid& fluid, std::uint64_t seed,
                           double tolerance) {
  Rng rng(seed);
  const auto& g = cs.grid;
  const double L = g.length();
  const auto phi = smooth_window(g, g.origin + uniform(rng, 0.3, 0.7) * L, 0.15 * L, uniform(rng, 0.0, 6.0));
  const auto psi = smooth_window(g, g.origin + uniform(rng, 0.3, 0.7) * L, 0.2 * L, uniform(rng, 0.0, 6.0));
  const auto P = smeared({ObservableKind::momentum_density, phi}, fluid, g);
  const auto R = smeared({ObservableKind::density, psi}, fluid, g);
  const auto S_phi = smeared({ObservableKind::entropy, phi}, fluid, g);
  const auto S = smeared({ObservableKind::entropy, psi}, fluid, g);
  const auto H = hamiltonian_functional(fluid);

  BracketSuite out;
  auto& r = out.report;
  r.title = "canonical bracket suite";
  r.add("{S_phi R_psi}", bracket(S_phi, R, cs), tolerance);

  // {P_phi, R_psi} = -sum w phi D psi on the grid.
  const auto dpsi = derivative(g, psi);
  std::vector<double> integrand(g.n);
  for (int i = 0; i < g.n; ++i) integrand[i] = phi[i] * dpsi[i];
  r.add("{P R} + sum w phi D psi", bracket(P, R, cs) + integrate(g, integrand), tolerance);

  double anti = 0.0;
  for (const auto& [F, G] : std::vector<std::pair<PhaseFunctional, PhaseFunctional>>{{P, R}, {P, S}, {H, P}, {S, H}}) {
    anti = std::max(anti, std::abs(bracket(F, G, cs) + bracket(G, F, cs)));
  }
  r.add("antisymmetry", anti, std::min(tolerance, kAntisymmetryTolerance));

  const double a = uniform(rng, 0.5, 2.0);
  const double bilinear = bracket(combine(a, P, R), H, cs) - a * bracket(P, H, cs) - bracket(R, H, cs);
  r.add("bilinearity", bilinear, std::min(tolerance, kBilinearityTolerance));

  // Linear-in-fields functionals: the cyclic sum vanishes exactly for the canonical structure.
  const auto A = combine(1.0, linear_functional(PhaseField::y, phi), linear_functional(PhaseField::pi0, psi));
  const auto B = combine(-0.5, linear_functional(PhaseField::pi1, phi), linear_functional(PhaseField::tau, psi));
  const auto C = combine(a, linear_functional(PhaseField::pi1, psi), linear_functional(PhaseField::pi0, phi));
  const double jacobi_linear = bracket(A, bracket_functional(B, C), cs) + bracket(B, bracket_functional(C, A), cs) +
                               bracket(C, bracket_functional(A, B), cs);
  r.add("jacobi (linear functionals)", jacobi_linear, std::min(tolerance, kJacobiTolerance));

  const double jacobi = bracket(H, bracket_functional(P, R), cs) + bracket(P, bracket_functional(R, H), cs) +
                        bracket(R, bracket_functional(H, P), cs);
  r.add("jacobi (node-perturbation gradients)", jacobi, 1e-5);

  const auto shifted = gauge_shift(cs, uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0));
  r.add("gauge invariance {P R}", bracket(P, R, cs) - bracket(P, R, shifted), std::min(tolerance, kGaugeTolerance));

  out.audit = reduced_bracket_audit(cs, fluid, phi, psi);
  return out;
}

std::string micro_csv_line(const KineticParameters& params) {
  const auto run = run_kinetic(params);
  char buf[256];
  const double rel = params.T > 0.0 ? (run.recovered_T - params.T) / params.T : run.recovered_T;
  std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g", params.T, run.rate, run.recovered_T, rel,
                run.lifetime_factor);
  return buf;
}

DiagnosticReport eos_check(const ScenarioConfig& cfg) {
  const auto& e = cfg.eos;
  const double tol = cfg.tolerances.fundamental_audit;
  switch (e.kind) {
    case EosKind::polytrope: {
      std::vector<double> volumes;
      for (int k = 0; k < 12; ++k) volumes.push_back(0.3 + 0.25 * k);
      return audit_fundamental(BarotropicEos::polytrope(e.K, e.gamma), volumes, tol);
    }
    case EosKind::ideal_gas:
    case EosKind::entropy_table: {
      const auto thermal = suite_thermal_fluid(cfg).eos;
      std::vector<DensityEntropy> states;
      for (double rho : {0.5, 0.8, 1.0, 1.5, 2.5})
        for (double s : {-0.5, 0.0, 0.4, 1.0}) states.push_back({rho, s});
      auto report = audit_fundamental(thermal, states, tol);
      if (e.kind == EosKind::entropy_table) {
        std::vector<EnergyVolume> ev;
        for (double en : {0.5, 1.0, 1.5, 3.0})
          for (double V : {0.5, 1.0, 2.0}) ev.push_back({en, V});
        merge(report, audit_fundamental(EntropyForm::ideal_gas(e.R, e.c_v, e.V0, e.T0), ev, tol), "entropy form: ");
      }
      return report;
    }
  }
  throw std::logic_error("unhandled EOS kind");
}

}  // namespace fieldflow
