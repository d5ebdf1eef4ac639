#pragma once

// Magneto-electric response models evaluated on the imaginary frequency axis
// and in the upper half of the complex frequency plane.
//
// Units are natural throughout: hbar = c = eps0 = mu0 = 1 and all frequencies
// are measured in a reference frequency omega_ref chosen by the caller.

#include <complex>
#include <variant>

namespace dispersion {

// Single-resonance response
//   chi(omega) = wp^2 / (wt^2 - omega^2 - i gamma omega).
// resonance == 0 describes a Drude metal.
struct DrudeLorentzParams {
  double plasma = 0.0;
  double resonance = 1.0;
  double damping = 0.0;

  // Plasma frequency that gives the static value `static_value` >= 1.
  static DrudeLorentzParams from_static(double static_value, double resonance,
                                        double damping);
};

struct Vacuum {};

struct ConstantStatic {
  double epsilon = 1.0;
  double mu = 1.0;
};

struct DrudeLorentz {
  DrudeLorentzParams permittivity{0.0, 1.0, 0.0};
  DrudeLorentzParams permeability{0.0, 1.0, 0.0};
};

// Ideal limits. They carry no response functions and only have meaning as
// a reflection boundary condition (r_p = +1, r_s = -1 and the reverse).
struct PerfectConductor {};
struct PerfectlyPermeable {};

using MaterialModel = std::variant<Vacuum, ConstantStatic, DrudeLorentz,
                                   PerfectConductor, PerfectlyPermeable>;

// How a Drude metal (resonance == 0) is treated at exactly xi = 0.
//   Drude:  finite damping, eps(i xi) xi^2 -> 0.
//   Plasma: damping dropped for the static term, eps(i xi) xi^2 -> wp^2.
enum class ZeroFrequencyPrescription { Drude, Plasma };

bool is_ideal(const MaterialModel& model) noexcept;

// eps(i xi). Throws UnsupportedModel for ideal markers. Returns +infinity for
// a Drude metal at xi == 0.
double epsilon_ixi(const MaterialModel& model, double xi);
double mu_ixi(const MaterialModel& model, double xi);

// eps(i xi) * xi^2 and mu(i xi) * xi^2 with the xi -> 0 limit resolved
// according to `prescription`. These are what enter b = sqrt(eps mu xi^2 + q^2).
double epsilon_xi2(const MaterialModel& model, double xi,
                   ZeroFrequencyPrescription prescription =
                       ZeroFrequencyPrescription::Drude);

std::complex<double> epsilon_complex(const MaterialModel& model,
                                     std::complex<double> omega);
std::complex<double> mu_complex(const MaterialModel& model,
                                std::complex<double> omega);

// Static values eps(0), mu(0); +infinity for a Drude metal.
double static_epsilon(const MaterialModel& model);
double static_mu(const MaterialModel& model);

// Largest resonance or plasma frequency present in the model (0 for
// frequency-independent models). Used to pick quadrature scales.
double characteristic_frequency(const MaterialModel& model) noexcept;

// Evaluators for a bare Drude-Lorentz term, shared by material and atom models.
double drude_lorentz_ixi(const DrudeLorentzParams& p, double xi) noexcept;
std::complex<double> drude_lorentz_complex(const DrudeLorentzParams& p,
                                           std::complex<double> omega) noexcept;

}  // namespace dispersion
