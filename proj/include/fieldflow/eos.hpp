#pragma once

#include <functional>
#include <span>
#include <string>
#include <utility>
#include <variant>

#include "fieldflow/diagnostics.hpp"
#include "fieldflow/jet.hpp"

namespace fieldflow {

/// Material constants in unimodular material coordinates (volume density h = 1).
struct MaterialConstants {
  double molar_mass = 1.0;      // M
  double beta = 1.0;            // temperature scale of the material-time potential
  double volume_density = 1.0;  // h, fixed to one

  void validate() const;
};

// ---------------------------------------------------------------------------
// Barotropic fluid: internal energy e(V)
// ---------------------------------------------------------------------------

struct BarotropicPoint {
  double e = 0.0;
  double p = 0.0;      // -de/dV
  double dp_dV = 0.0;
};

class BarotropicEos {
 public:
  /// Custom law: the callable returns e, p = -de/dV and dp/dV at V > 0.
  using Model = std::function<BarotropicPoint(double V)>;

  BarotropicEos(std::string name, Model model);

  /// e(V) = K / ((gamma - 1) V^(gamma - 1)), p = K V^-gamma.
  static BarotropicEos polytrope(double K, double gamma);

  const std::string& name() const { return name_; }

  /// Throws DomainError for V <= 0.
  BarotropicPoint at(double V) const;

  template <class S> S energy(const S& V) const {
    const auto r = at(value_of(V));
    return lift(V, r.e, -r.p);
  }
  template <class S> S pressure(const S& V) const {
    const auto r = at(value_of(V));
    return lift(V, r.p, r.dp_dV);
  }

  /// (dp/drho) / M.
  double sound_speed_squared(double V, double molar_mass) const;

 private:
  std::string name_;
  Model model_;
};

double barotropic_pressure(const BarotropicEos& eos, double V);

// ---------------------------------------------------------------------------
// Thermal fluid: Helmholtz free energy f(V, T)
// ---------------------------------------------------------------------------

struct HelmholtzPoint {
  double f = 0.0;
  double f_V = 0.0;
  double f_T = 0.0;
  double f_VV = 0.0;
  double f_VT = 0.0;
  double f_TT = 0.0;
};

class EntropyForm;

class ThermalEos {
 public:
  using Model = std::function<HelmholtzPoint(double V, double T)>;
  /// Optional closed-form inverse T(V, s).
  using TemperatureOfEntropy = std::function<double(double V, double s)>;

  ThermalEos(std::string name, Model model, TemperatureOfEntropy inverse = {});

  /// f = -R T ln(V/V0) - c_V T (ln(T/T0) - 1).
  static ThermalEos ideal_gas(double R = 1.0, double c_V = 1.5, double V0 = 1.0, double T0 = 1.0);
  /// Temperature-independent f = e(V); entropy vanishes identically.
  static ThermalEos from_barotropic(const BarotropicEos& eos);
  /// Helmholtz function obtained by inverting 1/T = ds/de at fixed V.
  static ThermalEos from_entropy_form(const EntropyForm& form);

  const std::string& name() const { return name_; }

  /// Throws DomainError unless V > 0 and T > 0.
  HelmholtzPoint at(double V, double T) const;

  template <class S> S free_energy(const S& V, const S& T) const {
    const auto h = at(value_of(V), value_of(T));
    return lift(V, T, h.f, h.f_V, h.f_T);
  }
  template <class S> S pressure(const S& V, const S& T) const {
    const auto h = at(value_of(V), value_of(T));
    return lift(V, T, -h.f_V, -h.f_VV, -h.f_VT);
  }
  template <class S> S entropy(const S& V, const S& T) const {
    const auto h = at(value_of(V), value_of(T));
    return lift(V, T, -h.f_T, -h.f_VT, -h.f_TT);
  }

  /// Solves s(V, T) = s for T.
  double temperature_at_entropy(double V, double s) const;

 private:
  std::string name_;
  Model model_;
  TemperatureOfEntropy inverse_;
};

struct ThermalResponse {
  double p = 0.0;
  double s = 0.0;
  double e = 0.0;
};

ThermalResponse thermal_response(const ThermalEos& eos, double V, double T);

// ---------------------------------------------------------------------------
// Entropy form: s(e, V)
// ---------------------------------------------------------------------------

struct EntropyPoint {
  double s = 0.0;
  double s_e = 0.0;  // 1/T
  double s_V = 0.0;  // p/T
  double s_ee = 0.0;
  double s_eV = 0.0;
  double s_VV = 0.0;
};

class EntropyForm {
 public:
  using Model = std::function<EntropyPoint(double e, double V)>;

  EntropyForm(std::string name, Model model);

  /// s = R ln(V/V0) + c_V ln(e / (c_V T0)).
  static EntropyForm ideal_gas(double R = 1.0, double c_V = 1.5, double V0 = 1.0, double T0 = 1.0);
  /// Entropy function obtained by inverting e = f - T f_T at fixed V.
  static EntropyForm from_thermal(const ThermalEos& eos);

  const std::string& name() const { return name_; }

  /// Throws DomainError outside the support or where ds/de <= 0.
  EntropyPoint at(double e, double V) const;

  double temperature(double e, double V) const;
  double pressure(double e, double V) const;
  /// (dp/de at fixed V, dp/dV at fixed e).
  std::pair<double, double> pressure_gradient(double e, double V) const;

 private:
  std::string name_;
  Model model_;
};

struct EntropyResponse {
  double s = 0.0;
  double T = 0.0;
  double p = 0.0;
};

EntropyResponse entropy_from_energy(const EntropyForm& form, double e, double V);

// ---------------------------------------------------------------------------
// Caloric model e(V, s) used by the canonical (energy-picture) dynamics
// ---------------------------------------------------------------------------

struct CaloricPoint {
  double e = 0.0;
  double T = 0.0;  // de/ds; zero for a barotropic fluid
  double p = 0.0;  // -de/dV
  double f = 0.0;  // e - T s
};

class CaloricModel {
 public:
  explicit CaloricModel(BarotropicEos eos);
  explicit CaloricModel(ThermalEos eos);

  bool thermal() const { return std::holds_alternative<ThermalEos>(eos_); }

  CaloricPoint at(double V, double s) const;
  /// (dp/drho at fixed s) / M.
  double sound_speed_squared(double V, double s, double molar_mass) const;

  const std::variant<BarotropicEos, ThermalEos>& eos() const { return eos_; }

 private:
  std::variant<BarotropicEos, ThermalEos> eos_;
};

// ---------------------------------------------------------------------------
// Fundamental-equation audits
// ---------------------------------------------------------------------------

struct DensityEntropy {
  double rho = 1.0;
  double s = 0.0;
};
struct EnergyVolume {
  double e = 1.0;
  double V = 1.0;
};

inline constexpr double kFundamentalAuditTolerance = 1e-7;

/// de - (p/rho^2) drho - T ds over central-difference probes at each (rho, s).
DiagnosticReport audit_fundamental(const ThermalEos& eos, std::span<const DensityEntropy> grid,
                                   double tolerance = kFundamentalAuditTolerance);
/// (de/dV + p) / max(1, |p|) with a central-difference probe scaled by V.
DiagnosticReport audit_fundamental(const BarotropicEos& eos, std::span<const double> volumes,
                                   double tolerance = kFundamentalAuditTolerance);
/// ds - de/T - (p/T) dV over central-difference probes at each (e, V).
DiagnosticReport audit_fundamental(const EntropyForm& form, std::span<const EnergyVolume> grid,
                                   double tolerance = kFundamentalAuditTolerance);

}  // namespace fieldflow
