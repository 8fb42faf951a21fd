#include "fieldflow/eos.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "fieldflow/errors.hpp"

namespace fieldflow {

namespace {

std::string fmt_state(const char* what, double a, double b) {
  std::ostringstream out;
  out << what << " (" << a << ", " << b << ")";
  return out.str();
}

/// Root of an increasing function g on the real line. g returns (g, g').
/// Expands a bracket from x0 and then runs Newton with bisection fallback.
double solve_increasing(const std::function<std::pair<double, double>(double)>& g, double x0,
                        const char* what) {
  double lo = x0, hi = x0;
  double glo = g(lo).first, ghi = glo;
  double step = 1.0;
  for (int k = 0; k < 200 && glo > 0.0; ++k) {
    hi = lo;
    ghi = glo;
    lo -= step;
    step *= 1.6;
    glo = g(lo).first;
  }
  step = 1.0;
  for (int k = 0; k < 200 && ghi < 0.0; ++k) {
    lo = hi;
    glo = ghi;
    hi += step;
    step *= 1.6;
    ghi = g(hi).first;
  }
  if (glo > 0.0 || ghi < 0.0 || !std::isfinite(glo) || !std::isfinite(ghi)) {
    throw ConvergenceError(std::string("no bracket for ") + what);
  }
  if (glo == 0.0) return lo;
  if (ghi == 0.0) return hi;
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const auto [gx, dgx] = g(x);
    if (gx == 0.0) return x;
    if (gx < 0.0) lo = x; else hi = x;
    double next = (dgx > 0.0) ? x - gx / dgx : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= 1e-15 * std::max(1.0, std::abs(x)) || hi - lo <= 1e-15) return next;
    x = next;
  }
  throw ConvergenceError(std::string("inversion did not converge for ") + what);
}

}  // namespace

void MaterialConstants::validate() const {
  if (!(molar_mass > 0.0)) throw DomainError("molar mass M must be > 0");
  if (!(beta > 0.0)) throw DomainError("beta must be > 0");
  if (volume_density != 1.0) throw DomainError("material coordinates must be unimodular (h = 1)");
}

// ---------------------------------------------------------------------------

BarotropicEos::BarotropicEos(std::string name, Model model)
    : name_(std::move(name)), model_(std::move(model)) {}

BarotropicEos BarotropicEos::polytrope(double K, double gamma) {
  if (!(K > 0.0)) throw DomainError("polytrope K must be > 0");
  if (!(gamma > 1.0)) throw DomainError("polytrope gamma must be > 1");
  return BarotropicEos("polytrope", [K, gamma](double V) {
    const double p = K * std::pow(V, -gamma);
    return BarotropicPoint{p * V / (gamma - 1.0), p, -gamma * p / V};
  });
}

BarotropicPoint BarotropicEos::at(double V) const {
  if (!(V > 0.0)) throw DomainError("barotropic EOS: molar volume must be > 0, got " + std::to_string(V));
  return model_(V);
}

double BarotropicEos::sound_speed_squared(double V, double molar_mass) const {
  return -V * V * at(V).dp_dV / molar_mass;
}

double barotropic_pressure(const BarotropicEos& eos, double V) { return eos.at(V).p; }

// ---------------------------------------------------------------------------

ThermalEos::ThermalEos(std::string name, Model model, TemperatureOfEntropy inverse)
    : name_(std::move(name)), model_(std::move(model)), inverse_(std::move(inverse)) {}

ThermalEos ThermalEos::ideal_gas(double R, double c_V, double V0, double T0) {
  if (!(R > 0.0) || !(c_V > 0.0) || !(V0 > 0.0) || !(T0 > 0.0)) {
    throw DomainError("ideal gas parameters R, c_V, V0, T0 must be > 0");
  }
  auto model = [=](double V, double T) {
    const double lv = std::log(V / V0);
    const double lt = std::log(T / T0);
    HelmholtzPoint h;
    h.f = -R * T * lv - c_V * T * (lt - 1.0);
    h.f_V = -R * T / V;
    h.f_T = -R * lv - c_V * lt;
    h.f_VV = R * T / (V * V);
    h.f_VT = -R / V;
    h.f_TT = -c_V / T;
    return h;
  };
  auto inverse = [=](double V, double s) { return T0 * std::exp((s - R * std::log(V / V0)) / c_V); };
  return ThermalEos("ideal_gas", model, inverse);
}

ThermalEos ThermalEos::from_barotropic(const BarotropicEos& eos) {
  return ThermalEos("thermal(" + eos.name() + ")", [eos](double V, double) {
    const auto b = eos.at(V);
    HelmholtzPoint h;
    h.f = b.e;
    h.f_V = -b.p;
    h.f_VV = -b.dp_dV;
    return h;
  });
}

ThermalEos ThermalEos::from_entropy_form(const EntropyForm& form) {
  // Energy at (V, T): root of ds/de(e, V) = 1/T, decreasing in e; solved in w = ln e.
  auto energy_at = [form](double V, double T) {
    const double w = solve_increasing(
        [&](double w) {
          const double e = std::exp(w);
          const auto p = form.at(e, V);
          return std::pair{1.0 / T - p.s_e, -e * p.s_ee};
        },
        0.0, "e(V, T)");
    return std::exp(w);
  };
  auto model = [form, energy_at](double V, double T) {
    const double e = energy_at(V, T);
    const auto p = form.at(e, V);
    const double de_dT = -1.0 / (T * T * p.s_ee);
    const double de_dV = -p.s_eV / p.s_ee;
    const double pressure = T * p.s_V;
    HelmholtzPoint h;
    h.f = e - T * p.s;
    h.f_V = -pressure;
    h.f_T = -p.s;
    h.f_TT = -p.s_e * de_dT;
    h.f_VT = -(p.s_e * de_dV + p.s_V);
    h.f_VV = -T * (p.s_eV * de_dV + p.s_VV);
    return h;
  };
  auto inverse = [form](double V, double s) {
    const double w = solve_increasing(
        [&](double w) {
          const double e = std::exp(w);
          const auto p = form.at(e, V);
          return std::pair{p.s - s, e * p.s_e};
        },
        0.0, "e(V, s)");
    return 1.0 / form.at(std::exp(w), V).s_e;
  };
  return ThermalEos("thermal(" + form.name() + ")", model, inverse);
}

HelmholtzPoint ThermalEos::at(double V, double T) const {
  if (!(V > 0.0) || !(T > 0.0)) {
    throw DomainError(fmt_state("thermal EOS requires V > 0 and T > 0, got (V, T) =", V, T));
  }
  return model_(V, T);
}

double ThermalEos::temperature_at_entropy(double V, double s) const {
  if (!(V > 0.0)) throw DomainError("thermal EOS: molar volume must be > 0");
  if (inverse_) return inverse_(V, s);
  // s(V, T) is increasing in T when f_TT < 0; solve in u = ln T.
  const double u = solve_increasing(
      [&](double u) {
        const double T = std::exp(u);
        const auto h = at(V, T);
        if (!(h.f_TT < 0.0)) throw DomainError("thermal EOS has no entropy-temperature relation at this V");
        return std::pair{-h.f_T - s, -T * h.f_TT};
      },
      0.0, "T(V, s)");
  return std::exp(u);
}

ThermalResponse thermal_response(const ThermalEos& eos, double V, double T) {
  const auto h = eos.at(V, T);
  const double s = -h.f_T;
  return {-h.f_V, s, h.f + T * s};
}

// ---------------------------------------------------------------------------

EntropyForm::EntropyForm(std::string name, Model model)
    : name_(std::move(name)), model_(std::move(model)) {}

EntropyForm EntropyForm::ideal_gas(double R, double c_V, double V0, double T0) {
  if (!(R > 0.0) || !(c_V > 0.0) || !(V0 > 0.0) || !(T0 > 0.0)) {
    throw DomainError("ideal gas parameters R, c_V, V0, T0 must be > 0");
  }
  return EntropyForm("ideal_gas_entropy", [=](double e, double V) {
    EntropyPoint p;
    p.s = R * std::log(V / V0) + c_V * std::log(e / (c_V * T0));
    p.s_e = c_V / e;
    p.s_V = R / V;
    p.s_ee = -c_V / (e * e);
    p.s_eV = 0.0;
    p.s_VV = -R / (V * V);
    return p;
  });
}

EntropyForm EntropyForm::from_thermal(const ThermalEos& eos) {
  return EntropyForm("entropy(" + eos.name() + ")", [eos](double e, double V) {
    // e(V, T) = f - T f_T is increasing in T; solve in u = ln T.
    const double u = solve_increasing(
        [&](double u) {
          const double T = std::exp(u);
          const auto h = eos.at(V, T);
          return std::pair{h.f - T * h.f_T - e, -T * T * h.f_TT};
        },
        0.0, "T(e, V)");
    const double T = std::exp(u);
    const auto h = eos.at(V, T);
    const double p = -h.f_V;
    const double de_dT = -T * h.f_TT;
    const double de_dV = h.f_V - T * h.f_VT;
    const double dT_dV = -de_dV / de_dT;  // at fixed e
    const double dp_dV = -h.f_VV - h.f_VT * dT_dV;
    EntropyPoint pt;
    pt.s = -h.f_T;
    pt.s_e = 1.0 / T;
    pt.s_V = p / T;
    pt.s_ee = -1.0 / (T * T * de_dT);
    pt.s_eV = -dT_dV / (T * T);
    pt.s_VV = dp_dV / T - p * dT_dV / (T * T);
    return pt;
  });
}

EntropyPoint EntropyForm::at(double e, double V) const {
  if (!(V > 0.0)) throw DomainError(fmt_state("entropy form requires V > 0, got (e, V) =", e, V));
  const auto p = model_(e, V);
  if (!std::isfinite(p.s) || !(p.s_e > 0.0)) {
    throw DomainError(fmt_state("entropy form outside its support at (e, V) =", e, V));
  }
  return p;
}

double EntropyForm::temperature(double e, double V) const { return 1.0 / at(e, V).s_e; }

double EntropyForm::pressure(double e, double V) const {
  const auto p = at(e, V);
  return p.s_V / p.s_e;
}

std::pair<double, double> EntropyForm::pressure_gradient(double e, double V) const {
  const auto p = at(e, V);
  const double inv = 1.0 / (p.s_e * p.s_e);
  return {(p.s_eV * p.s_e - p.s_V * p.s_ee) * inv, (p.s_VV * p.s_e - p.s_V * p.s_eV) * inv};
}

EntropyResponse entropy_from_energy(const EntropyForm& form, double e, double V) {
  const auto p = form.at(e, V);
  return {p.s, 1.0 / p.s_e, p.s_V / p.s_e};
}

// ---------------------------------------------------------------------------

CaloricModel::CaloricModel(BarotropicEos eos) : eos_(std::move(eos)) {}
CaloricModel::CaloricModel(ThermalEos eos) : eos_(std::move(eos)) {}

CaloricPoint CaloricModel::at(double V, double s) const {
  if (const auto* b = std::get_if<BarotropicEos>(&eos_)) {
    const auto r = b->at(V);
    return {r.e, 0.0, r.p, r.e};
  }
  const auto& th = std::get<ThermalEos>(eos_);
  const double T = th.temperature_at_entropy(V, s);
  const auto h = th.at(V, T);
  return {h.f + T * s, T, -h.f_V, h.f};
}

double CaloricModel::sound_speed_squared(double V, double s, double molar_mass) const {
  if (const auto* b = std::get_if<BarotropicEos>(&eos_)) return b->sound_speed_squared(V, molar_mass);
  const auto& th = std::get<ThermalEos>(eos_);
  const auto h = th.at(V, th.temperature_at_entropy(V, s));
  return V * V * (h.f_VV - h.f_VT * h.f_VT / h.f_TT) / molar_mass;
}

// ---------------------------------------------------------------------------

namespace {
constexpr double kProbe = 1e-4;
const std::array<std::array<double, 2>, 3> kDirections{{{1.0, 0.0}, {0.0, 1.0}, {M_SQRT1_2, M_SQRT1_2}}};
}  // namespace

DiagnosticReport audit_fundamental(const ThermalEos& eos, std::span<const DensityEntropy> grid,
                                   double tolerance) {
  DiagnosticReport report{"de = (p/rho^2) drho + T ds", {}};
  const CaloricModel model(eos);
  for (const auto& pt : grid) {
    const auto c = model.at(1.0 / pt.rho, pt.s);
    double worst = 0.0;
    for (const auto& d : kDirections) {
      const auto plus = model.at(1.0 / (pt.rho + kProbe * d[0]), pt.s + kProbe * d[1]);
      const auto minus = model.at(1.0 / (pt.rho - kProbe * d[0]), pt.s - kProbe * d[1]);
      const double de = (plus.e - minus.e) / (2.0 * kProbe);
      worst = std::max(worst, std::abs(de - c.p / (pt.rho * pt.rho) * d[0] - c.T * d[1]));
    }
    report.add(fmt_state("(rho, s) =", pt.rho, pt.s), worst, tolerance);
  }
  return report;
}

DiagnosticReport audit_fundamental(const BarotropicEos& eos, std::span<const double> volumes,
                                   double tolerance) {
  DiagnosticReport report{"de = -p dV", {}};
  for (double V : volumes) {
    const double dV = kProbe * V;
    const double de = (eos.at(V + dV).e - eos.at(V - dV).e) / (2.0 * dV);
    const double p = eos.at(V).p;
    report.add("V = " + std::to_string(V), (de + p) / std::max(1.0, std::abs(p)), tolerance);
  }
  return report;
}

DiagnosticReport audit_fundamental(const EntropyForm& form, std::span<const EnergyVolume> grid,
                                   double tolerance) {
  DiagnosticReport report{"ds = de/T + (p/T) dV", {}};
  for (const auto& pt : grid) {
    const auto r = entropy_from_energy(form, pt.e, pt.V);
    double worst = 0.0;
    for (const auto& d : kDirections) {
      const double ds = (form.at(pt.e + kProbe * d[0], pt.V + kProbe * d[1]).s -
                         form.at(pt.e - kProbe * d[0], pt.V - kProbe * d[1]).s) /
                        (2.0 * kProbe);
      worst = std::max(worst, std::abs(ds - d[0] / r.T - r.p / r.T * d[1]));
    }
    report.add(fmt_state("(e, V) =", pt.e, pt.V), worst, tolerance);
  }
  return report;
}

}  // namespace fieldflow
