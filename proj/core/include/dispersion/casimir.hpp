#pragma once

// Casimir stress and force per unit area between two planar multilayer
// stacks, at zero and finite temperature, plus the ideal-mirror closed forms.

#include <variant>

#include "dispersion/planar_greens.hpp"
#include "dispersion/quadrature.hpp"

namespace dispersion {

struct ZeroT {};
struct FiniteT {
  double kT = 0.0;  // k_B T in units of hbar omega_ref
};
using TemperatureSpec = std::variant<ZeroT, FiniteT>;

enum class SignConvention {
  AttractionPositive,
};

struct PressureResult {
  double value = 0.0;
  double error = 0.0;
  bool converged = true;
  long evaluations = 0;
  long matsubara_terms = 0;  // 0 at zero temperature
  SignConvention sign = SignConvention::AttractionPositive;
};

struct CasimirOptions {
  double rel_tol = 1e-8;
  double abs_floor = 0.0;
  ZeroFrequencyPrescription prescription = ZeroFrequencyPrescription::Drude;
  long max_matsubara_terms = 200000;
};

// Force per area on the right stack (positive = attraction). Only the
// multiple-reflection terms contribute; the divergent single-wall pieces are
// removed, which leaves a z-independent result for any interspace medium.
PressureResult casimir_pressure(const PlanarScenario& scenario,
                                const TemperatureSpec& temp = ZeroT{},
                                const CasimirOptions& options = {});

// T_zz at an interior point, all four terms kept.
PressureResult stress_zz(const PlanarScenario& scenario, double z,
                         const TemperatureSpec& temp = ZeroT{},
                         const CasimirOptions& options = {});

PressureResult matsubara_pressure(const PlanarScenario& scenario, double kT,
                                  const CasimirOptions& options = {});

// Spectral density K(xi) of the pressure: P = (1/pi) \int dxi K(xi) at zero
// temperature and 2 kT sum' K(xi_n) at finite temperature.
QuadResult pressure_spectral_density(const PlanarScenario& scenario, double xi,
                                     const CasimirOptions& options = {});

// (pi^2/240) sqrt(mu/eps) (2/3 + 1/(3 eps mu)) / d^4
double perfect_mirror_pressure(double eps, double mu, double d);

// Net force on a perfectly conducting plate between two perfect mirrors,
// positive toward the right mirror.
double plate_in_cavity_force(double eps, double mu, double d_left, double d_right);

// Same configuration computed with the Minkowski stress tensor (mu = 1).
double plate_in_cavity_force_minkowski(double eps, double d_left, double d_right);

}  // namespace dispersion
