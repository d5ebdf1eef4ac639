#pragma once

// Excited two-level atom near a dielectric half space in the nonretarded
// regime (level shift, width, resonant and off-resonant force), and the
// weak/strong-coupling evolution of the upper-state amplitude.

#include <complex>
#include <vector>

#include "dispersion/material.hpp"
#include "dispersion/quadrature.hpp"

namespace dispersion {

struct TwoLevelNearHalfSpace {
  double frequency = 1.0;      // bare transition frequency omega_10
  double dipole_weight = 0.0;  // |d01|^2 + (d01 . e_z)^2
  MaterialModel material = Vacuum{};
  double position = 1.0;       // z_A

  void validate() const;
  // z_A omega_10 < 0.1, the near-field window the formulas assume.
  bool nonretarded() const noexcept;
};

struct ShiftOptions {
  double tol = 1e-10;  // relative to omega_10
  int max_iter = 200;
};

struct ShiftResult {
  double shift = 0.0;
  double residual = 0.0;
  int iterations = 0;
  bool bracketed = false;  // fixed-point iteration failed, root found by bracketing
};

// Self-consistent shift delta = h(omega_10 + delta).
ShiftResult solve_shift(const TwoLevelNearHalfSpace& sys, const ShiftOptions& options = {});
// Right-hand side h of the shift equation at a trial shift.
double shift_map(const TwoLevelNearHalfSpace& sys, double shift);
double width(const TwoLevelNearHalfSpace& sys, double shift);

struct LevelShift {
  double shift = 0.0;
  double width = 0.0;
};
LevelShift shift_and_width(const TwoLevelNearHalfSpace& sys,
                           const ShiftOptions& options = {});

// -(3D / 32 pi z^4) (|eps(Omega)|^2 - 1) / |eps(Omega) + 1|^2 with
// Omega = omega_10 + delta + i Gamma / 2.
double resonant_force(const TwoLevelNearHalfSpace& sys, const ShiftOptions& options = {});
double resonant_force(const TwoLevelNearHalfSpace& sys, const LevelShift& level);
// Same with delta = Gamma = 0.
double resonant_force_perturbative(const TwoLevelNearHalfSpace& sys);

QuadResult offresonant_force(const TwoLevelNearHalfSpace& sys, const LevelShift& level,
                             double rel_tol = 1e-10);
QuadResult offresonant_force(const TwoLevelNearHalfSpace& sys,
                             const ShiftOptions& options = {}, double rel_tol = 1e-10);

struct QuasiMode {
  double frequency = 1.0;       // omega_nu
  double linewidth = 0.0;       // gamma_nu
  double rabi = 0.0;            // Omega_R
  double residual_width = 0.0;  // Gamma_1'
  double residual_shift = 0.0;  // delta omega_1'
  double atom_frequency = 1.0;  // bare omega_10

  void validate() const;
  // Delta omega = omega_nu - (omega_10 + delta omega_1')
  double detuning() const noexcept;
};

enum class CouplingRegime { Weak, Intermediate, Strong };

CouplingRegime classify(const QuasiMode& mode) noexcept;

struct ModeRoots {
  std::complex<double> plus;
  std::complex<double> minus;
  // c_+ and c_-; NaN when the roots coincide.
  std::complex<double> c_plus;
  std::complex<double> c_minus;
  bool degenerate = false;
};

// Roots of phi'' + A phi' + Omega_R^2/4 phi = 0 with A = i Delta + (gamma - Gamma')/2.
// Omega_+ is the root of smaller modulus (the slowly varying one that tends
// to the perturbative rate in weak coupling).
ModeRoots mode_roots(const QuasiMode& mode);

// Weak-coupling expansion of Omega_+.
std::complex<double> weak_coupling_rate(const QuasiMode& mode) noexcept;

// phi_1(t) with phi(0) = 1, phi'(0) = 0.
std::complex<double> upper_amplitude(const QuasiMode& mode, double t);

struct EvolutionResult {
  std::vector<double> time;
  std::vector<double> population;
  std::vector<double> force_scale;
  CouplingRegime regime = CouplingRegime::Weak;
  bool regime_warning = false;
};

// Force and population decay as e^{-Gamma t}; t measured from t0.
EvolutionResult evolve_weak(double rate, const std::vector<double>& time);

// Exact population e^{-Gamma' t}|phi_1|^2 and strong-coupling force envelope
//   2 e^{-(gamma + Gamma') t/2} sin^2(Omega t/2) (Delta^2 - (gamma - Gamma')^2/4)
//     / (Omega_R^2 + Delta^2 - (gamma - Gamma')^2/4).
EvolutionResult evolve_strong(const QuasiMode& mode, const std::vector<double>& time);

}  // namespace dispersion
