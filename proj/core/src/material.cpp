#include "dispersion/material.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "dispersion/error.hpp"

namespace dispersion {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

[[noreturn]] void throw_ideal(const char* what) {
  throw UnsupportedModel(std::string(what) +
                         ": ideal-limit marker has no response function");
}

// chi(i xi) xi^2 for a single term, with the xi -> 0 limit resolved.
double chi_xi2(const DrudeLorentzParams& p, double xi,
               ZeroFrequencyPrescription prescription) {
  const double wp2 = p.plasma * p.plasma;
  if (wp2 == 0.0) return 0.0;
  if (xi > 0.0) {
    return wp2 * xi * xi /
           (p.resonance * p.resonance + xi * xi + p.damping * xi);
  }
  // xi == 0
  if (p.resonance > 0.0) return 0.0;
  if (prescription == ZeroFrequencyPrescription::Plasma || p.damping == 0.0)
    return wp2;
  return 0.0;
}

}  // namespace

DrudeLorentzParams DrudeLorentzParams::from_static(double static_value,
                                                   double resonance,
                                                   double damping) {
  if (static_value < 1.0)
    throw DomainError("static response must be >= 1");
  if (resonance <= 0.0)
    throw DomainError("static response needs a positive resonance frequency");
  return {resonance * std::sqrt(static_value - 1.0), resonance, damping};
}

double drude_lorentz_ixi(const DrudeLorentzParams& p, double xi) noexcept {
  const double wp2 = p.plasma * p.plasma;
  if (wp2 == 0.0) return 0.0;
  const double den = p.resonance * p.resonance + xi * xi + p.damping * xi;
  return den > 0.0 ? wp2 / den : kInf;
}

std::complex<double> drude_lorentz_complex(const DrudeLorentzParams& p,
                                           std::complex<double> omega) noexcept {
  using namespace std::complex_literals;
  const double wp2 = p.plasma * p.plasma;
  if (wp2 == 0.0) return 0.0;
  return wp2 /
         (p.resonance * p.resonance - omega * omega - 1i * p.damping * omega);
}

bool is_ideal(const MaterialModel& model) noexcept {
  return std::holds_alternative<PerfectConductor>(model) ||
         std::holds_alternative<PerfectlyPermeable>(model);
}

double epsilon_ixi(const MaterialModel& model, double xi) {
  if (xi < 0.0) throw DomainError("epsilon_ixi: xi must be non-negative");
  return std::visit(
      overloaded{
          [](const Vacuum&) { return 1.0; },
          [](const ConstantStatic& c) { return c.epsilon; },
          [xi](const DrudeLorentz& d) {
            return 1.0 + drude_lorentz_ixi(d.permittivity, xi);
          },
          [](const PerfectConductor&) -> double { throw_ideal("epsilon_ixi"); },
          [](const PerfectlyPermeable&) -> double {
            throw_ideal("epsilon_ixi");
          },
      },
      model);
}

double mu_ixi(const MaterialModel& model, double xi) {
  if (xi < 0.0) throw DomainError("mu_ixi: xi must be non-negative");
  return std::visit(
      overloaded{
          [](const Vacuum&) { return 1.0; },
          [](const ConstantStatic& c) { return c.mu; },
          [xi](const DrudeLorentz& d) {
            return 1.0 + drude_lorentz_ixi(d.permeability, xi);
          },
          [](const PerfectConductor&) -> double { throw_ideal("mu_ixi"); },
          [](const PerfectlyPermeable&) -> double { throw_ideal("mu_ixi"); },
      },
      model);
}

double epsilon_xi2(const MaterialModel& model, double xi,
                   ZeroFrequencyPrescription prescription) {
  if (xi < 0.0) throw DomainError("epsilon_xi2: xi must be non-negative");
  return std::visit(
      overloaded{
          [xi](const Vacuum&) { return xi * xi; },
          [xi](const ConstantStatic& c) { return c.epsilon * xi * xi; },
          [xi, prescription](const DrudeLorentz& d) {
            return xi * xi + chi_xi2(d.permittivity, xi, prescription);
          },
          [](const PerfectConductor&) -> double { throw_ideal("epsilon_xi2"); },
          [](const PerfectlyPermeable&) -> double {
            throw_ideal("epsilon_xi2");
          },
      },
      model);
}

std::complex<double> epsilon_complex(const MaterialModel& model,
                                     std::complex<double> omega) {
  if (omega.imag() < 0.0)
    throw DomainError("epsilon_complex: frequency must lie in the upper half plane");
  return std::visit(
      overloaded{
          [](const Vacuum&) { return std::complex<double>(1.0); },
          [](const ConstantStatic& c) { return std::complex<double>(c.epsilon); },
          [omega](const DrudeLorentz& d) {
            return 1.0 + drude_lorentz_complex(d.permittivity, omega);
          },
          [](const PerfectConductor&) -> std::complex<double> {
            throw_ideal("epsilon_complex");
          },
          [](const PerfectlyPermeable&) -> std::complex<double> {
            throw_ideal("epsilon_complex");
          },
      },
      model);
}

std::complex<double> mu_complex(const MaterialModel& model,
                                std::complex<double> omega) {
  if (omega.imag() < 0.0)
    throw DomainError("mu_complex: frequency must lie in the upper half plane");
  return std::visit(
      overloaded{
          [](const Vacuum&) { return std::complex<double>(1.0); },
          [](const ConstantStatic& c) { return std::complex<double>(c.mu); },
          [omega](const DrudeLorentz& d) {
            return 1.0 + drude_lorentz_complex(d.permeability, omega);
          },
          [](const PerfectConductor&) -> std::complex<double> {
            throw_ideal("mu_complex");
          },
          [](const PerfectlyPermeable&) -> std::complex<double> {
            throw_ideal("mu_complex");
          },
      },
      model);
}

double static_epsilon(const MaterialModel& model) {
  return epsilon_ixi(model, 0.0);
}

double static_mu(const MaterialModel& model) { return mu_ixi(model, 0.0); }

double characteristic_frequency(const MaterialModel& model) noexcept {
  if (const auto* d = std::get_if<DrudeLorentz>(&model)) {
    return std::max({d->permittivity.resonance * (d->permittivity.plasma > 0),
                     d->permeability.resonance * (d->permeability.plasma > 0),
                     d->permittivity.plasma, d->permeability.plasma});
  }
  return 0.0;
}

}  // namespace dispersion
