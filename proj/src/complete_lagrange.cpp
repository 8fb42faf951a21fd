#include "fieldflow/complete_lagrange.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fieldflow/interpolation.hpp"

namespace fieldflow {

CompleteLagrangeFluid CompleteLagrangeFluid::ideal_gas(double R, double c_V, double V0, double T0,
                                                       MaterialConstants constants) {
  CompleteLagrangeFluid f{ThermalEos::ideal_gas(R, c_V, V0, T0), EntropyForm::ideal_gas(R, c_V, V0, T0), constants};
  f.validate();
  return f;
}

void CompleteLagrangeFluid::validate() const {
  constants.validate();
  if (constants.beta != 1.0) {
    throw std::invalid_argument("the complete Lagrange picture uses T = 1/t_tau and needs beta = 1");
  }
}

ClKinematics kinematics_cl(const SpacetimeJacobian& X) {
  if (!(X.t_tau > 0.0)) throw ConfigurationError("t_tau must be positive (T > 0)");
  if (!(X.x_y > 0.0)) throw ConfigurationError("spatial block x_y must be positive");
  ClKinematics k;
  k.det = X.t_tau * X.x_y - X.t_y * X.x_tau;
  if (!(k.det > 0.0)) throw ConfigurationError("det(x^mu_alpha) must be positive");
  k.T = 1.0 / X.t_tau;
  k.V = k.det / X.t_tau;
  k.v = X.x_tau / X.t_tau;
  return k;
}

ChiW chi_w(const SpacetimeJacobian& X) {
  if (!(X.x_y > 0.0)) throw ConfigurationError("chi must be positive");
  return {X.x_y, X.t_y / X.x_y};
}

ClPoint cl_point(const SpacetimeJacobian& X, const CompleteLagrangeFluid& fluid) {
  const double M = fluid.constants.molar_mass;
  ClPoint r;
  r.k = kinematics_cl(X);
  r.cw = chi_w(X);
  const double T = r.k.T, V = r.k.V, v = r.k.v;
  const auto h = fluid.eos.at(V, T);
  r.f = h.f;
  r.s = -h.f_T;
  r.p = -h.f_V;
  r.e = r.f + T * r.s;
  const double kinetic = 0.5 * M * v * v;
  r.L = X.t_tau * (kinetic - r.f);
  const double d = r.k.det;
  r.Z = {{{X.x_y / d, -X.t_y / d}, {-X.x_tau / d, X.t_tau / d}}};
  const double c = r.p * V / T;
  r.P[0][0] = c * r.Z[0][0] - (r.e + r.p * V + kinetic);
  r.P[0][1] = c * r.Z[0][1] + M * v;
  r.P[1][0] = c * r.Z[1][0];
  r.P[1][1] = c * r.Z[1][1];
  r.T[0][0] = -r.s;
  r.T[1][0] = 0.0;
  r.T[0][1] = M * v * X.x_y - X.t_y * (r.e + r.p * V + kinetic);
  r.T[1][1] = (1.0 / T) * (r.f + r.p * V - kinetic);
  return r;
}

Tensor2<double> cl_contraction(const ClPoint& pt, const SpacetimeJacobian& X) {
  const Tensor2<double> x{{{X.t_tau, X.t_y}, {X.x_tau, X.x_y}}};  // x[mu][beta]
  Tensor2<double> T{};
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      T[a][b] = pt.P[a][0] * x[0][b] + pt.P[a][1] * x[1][b] - (a == b ? pt.L : 0.0);
    }
  }
  return T;
}

CanonicalPi canonical_pi(const ClPoint& pt) { return {pt.P[0][0], pt.P[0][1]}; }

namespace {

std::array<double, 2> inversion_residual(double e, double V, const CanonicalPi& pi, const ChiW& cw, double M,
                                         const EntropyForm& form) {
  const double p = form.pressure(e, V);
  const double chi = cw.chi, w = cw.w;
  return {M * V - chi * (M - w * pi.Pi1 - p * chi * w * w),
          e + pi.Pi0 + pi.Pi1 * pi.Pi1 / (2.0 * M) - p * p * w * w * chi * chi / (2.0 * M)};
}

double norm(const std::array<double, 2>& r) { return std::max(std::abs(r[0]), std::abs(r[1])); }

}  // namespace

Inversion invert_canonical(const CanonicalPi& pi, const ChiW& cw, const CompleteLagrangeFluid& fluid,
                           double tolerance, int max_iterations) {
  if (!(cw.chi > 0.0)) throw ConfigurationError("chi must be positive");
  const double M = fluid.constants.molar_mass;
  const auto& form = fluid.entropy;
  double e = -pi.Pi0 - pi.Pi1 * pi.Pi1 / (2.0 * M);
  double V = cw.chi;
  auto r = inversion_residual(e, V, pi, cw, M, form);
  int it = 0;
  while (norm(r) > tolerance) {
    if (it >= max_iterations) {
      throw ConvergenceError("canonical inversion did not converge in " + std::to_string(max_iterations) +
                             " iterations");
    }
    ++it;
    const double p = form.pressure(e, V);
    const auto [p_e, p_V] = form.pressure_gradient(e, V);
    const double chi2w2 = cw.chi * cw.chi * cw.w * cw.w;
    const double a11 = chi2w2 * p_e, a12 = M + chi2w2 * p_V;
    const double a21 = 1.0 - p * p_e * chi2w2 / M, a22 = -p * p_V * chi2w2 / M;
    const double det = a11 * a22 - a12 * a21;
    if (det == 0.0 || !std::isfinite(det)) throw ConvergenceError("singular Newton matrix in canonical inversion");
    const double de = -(a22 * r[0] - a12 * r[1]) / det;
    const double dV = -(-a21 * r[0] + a11 * r[1]) / det;
    double lambda = 1.0;
    bool accepted = false;
    for (int halving = 0; halving < 40; ++halving, lambda *= 0.5) {
      const double e_new = e + lambda * de, V_new = V + lambda * dV;
      try {
        const auto r_new = inversion_residual(e_new, V_new, pi, cw, M, form);
        if (norm(r_new) < norm(r)) {
          e = e_new;
          V = V_new;
          r = r_new;
          accepted = true;
          break;
        }
      } catch (const DomainError&) {
        // outside the EOS support: shorten the step
      }
    }
    if (!accepted) throw ConvergenceError("damped Newton step failed to reduce the residual");
  }
  const auto s = entropy_from_energy(form, e, V);
  Inversion out;
  out.e = e;
  out.V = V;
  out.p = s.p;
  out.T = s.T;
  out.s = s.s;
  out.hamiltonian = -s.s;
  out.iterations = it;
  out.residual = r;
  return out;
}

DiagnosticReport cl_identities(const SpacetimeJacobian& X, const CompleteLagrangeFluid& fluid, double tolerance) {
  const auto pt = cl_point(X, fluid);
  DiagnosticReport r;
  r.title = "complete Lagrange identities";
  r.add("det - V/T", (pt.k.det - pt.k.V / pt.k.T) / std::max(1.0, std::abs(pt.k.det)), tolerance);
  const double y_x = pt.Z[1][1];  // spatial derivative of the label from the inverse Jacobian
  r.add("(x_y - v t_y) y_x - 1", (X.x_y - pt.k.v * X.t_y) * y_x - 1.0, tolerance);
  r.add("V - chi (1 - w v)", pt.k.V - pt.cw.chi * (1.0 - pt.cw.w * pt.k.v), tolerance);
  r.add("T^a_0", pt.T[1][0], tolerance);
  const auto c = cl_contraction(pt, X);
  double worst = 0.0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) worst = std::max(worst, std::abs(c[a][b] - pt.T[a][b]));
  r.add("table - contraction", worst, tolerance);
  return r;
}

DiagnosticReport rest_frame_reduction_cl(const SpacetimeJacobian& X, const CompleteLagrangeFluid& fluid,
                                         double probe, double tolerance) {
  const auto pt = cl_point(X, fluid);
  if (std::abs(pt.k.v) > 1e-12) throw std::invalid_argument("rest-frame reduction needs v = 0");
  const auto pi = canonical_pi(pt);
  const auto cw = pt.cw;
  DiagnosticReport r;
  r.title = "ds = de/T + (p/T) dV";
  if (probe == 0.0) {
    r.add("zero probe", 0.0, tolerance);
    return r;
  }
  const auto base = invert_canonical(pi, cw, fluid);
  const std::array<std::array<double, 2>, 3> directions{{{1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}}};
  const char* names[3] = {"probe delta e (via Pi0)", "probe delta V (via chi)", "probe delta e + delta V"};
  for (int d = 0; d < 3; ++d) {
    auto shifted = [&](double sign) {
      CanonicalPi p = pi;
      ChiW c = cw;
      p.Pi0 -= sign * probe * directions[d][0];
      c.chi += sign * probe * directions[d][1];
      return invert_canonical(p, c, fluid);
    };
    const auto plus = shifted(1.0), minus = shifted(-1.0);
    const double ds = 0.5 * (plus.s - minus.s);
    const double de = 0.5 * (plus.e - minus.e);
    const double dV = 0.5 * (plus.V - minus.V);
    const double predicted = de / base.T + base.p / base.T * dV;
    r.add(names[d], std::abs(ds - predicted) / probe, tolerance);
  }
  return r;
}

DiagnosticReport rest_frame_reduction_cl(const CompleteLagrangeState& state, const CompleteLagrangeFluid& fluid,
                                         double probe, double tolerance) {
  DiagnosticReport r;
  r.title = "ds = de/T + (p/T) dV";
  std::vector<double> worst;
  for (const auto& X : state.jacobian) {
    const auto node = rest_frame_reduction_cl(X, fluid, probe, tolerance);
    if (worst.empty()) worst.assign(node.entries.size(), 0.0);
    for (std::size_t k = 0; k < node.entries.size(); ++k) worst[k] = std::max(worst[k], node.entries[k].value);
    if (r.entries.empty()) r.entries = node.entries;
  }
  for (std::size_t k = 0; k < r.entries.size(); ++k) {
    r.entries[k].value = worst[k];
    r.entries[k].passed = worst[k] <= tolerance;
  }
  return r;
}

ClFromEuler transform_from_euler(const ThermoFieldState& snapshot, double time, const CompleteLagrangeFluid& fluid,
                                 double tolerance) {
  fluid.validate();
  const auto& eg = snapshot.grid;
  if (!eg.is_periodic()) throw std::invalid_argument("transform_from_euler needs a periodic grid");
  const int n = eg.n;
  const ThermalFluid thermal{fluid.eos, fluid.constants};

  Grid1D mg;
  const GridField x = invert_periodic_map(eg, snapshot.y, &mg);

  const auto tau_x = TrigInterpolant(snapshot.tau.value, eg.origin, eg.h, snapshot.tau.jump).node_derivative();
  const auto y_x = TrigInterpolant(snapshot.y.value, eg.origin, eg.h, snapshot.y.jump).node_derivative();
  std::vector<double> T(n), V(n), v(n), pi0(n);
  for (int i = 0; i < n; ++i) {
    const auto pt = thermo_point(snapshot.tau.rate[i], tau_x[i], snapshot.y.rate[i], y_x[i], thermal);
    T[i] = pt.T;
    V[i] = pt.V;
    v[i] = pt.v;
    pi0[i] = pt.Theta[0][0];
  }

  ClFromEuler out;
  auto& st = out.state;
  st.grid = mg;
  st.x = x.value;
  st.t.assign(n, time);
  std::array<double, 3> worst_kin{};
  double worst_pi0 = 0.0, worst_P00 = 0.0;
  auto trig = [&](const std::vector<double>& f, double jump = 0.0) { return TrigInterpolant(f, eg.origin, eg.h, jump); };
  const auto i_tau = trig(snapshot.tau.value, snapshot.tau.jump), i_tt = trig(snapshot.tau.rate), i_tx = trig(tau_x);
  const auto i_yt = trig(snapshot.y.rate), i_yx = trig(y_x);
  const auto i_T = trig(T), i_V = trig(V), i_v = trig(v), i_pi0 = trig(pi0);
  for (int i = 0; i < n; ++i) {
    const double X = x.value[i];
    const double tt = i_tt(X), tx = i_tx(X);
    const double yt = i_yt(X), yx = i_yx(X);
    st.tau.push_back(i_tau(X));
    const double d = tt * yx - tx * yt;
    if (!(d > 0.0)) throw ConfigurationError("potential Jacobian is not invertible");
    SpacetimeJacobian J{yx / d, -tx / d, -yt / d, tt / d};
    st.jacobian.push_back(J);
    const auto pt = cl_point(J, fluid);
    worst_kin[0] = std::max(worst_kin[0], std::abs(pt.k.T - i_T(X)));
    worst_kin[1] = std::max(worst_kin[1], std::abs(pt.k.V - i_V(X)));
    worst_kin[2] = std::max(worst_kin[2], std::abs(pt.k.v - i_v(X)));
    // pi0 = beta rho s in the energy picture; P^0_0 + (e + pV + Mv^2/2) = (pV/T) z^0_0 with z^0_0 = tau_t.
    const double beta = fluid.constants.beta;
    worst_pi0 = std::max(worst_pi0, std::abs(i_pi0(X) - beta * pt.s / pt.k.V));
    const double kinetic = 0.5 * fluid.constants.molar_mass * pt.k.v * pt.k.v;
    worst_P00 = std::max(worst_P00, std::abs(pt.P[0][0] + (pt.e + pt.p * pt.k.V + kinetic) -
                                             pt.p * pt.k.V / pt.k.T * tt));
  }
  out.report.title = "euler -> complete lagrange";
  out.report.add("T mismatch", worst_kin[0], tolerance);
  out.report.add("V mismatch", worst_kin[1], tolerance);
  out.report.add("v mismatch", worst_kin[2], tolerance);
  out.report.add("pi0 - beta rho s", worst_pi0, tolerance);
  out.report.add("P0_0 + (e + pV + Mv^2/2) - (pV/T) z0_0", worst_P00, tolerance);
  return out;
}

}  // namespace fieldflow
