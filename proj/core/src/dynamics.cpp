#include "dispersion/dynamics.hpp"

#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

#include "dispersion/error.hpp"

namespace dispersion {
namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;

// (|eps|^2 - 1) / |eps + 1|^2
double reflection_weight(cplx eps) {
  return (std::norm(eps) - 1.0) / std::norm(eps + 1.0);
}

double near_field(const TwoLevelNearHalfSpace& s, double power) {
  return s.dipole_weight / std::pow(s.position, power);
}

// sinh(x)/x, entire.
cplx sinhc(cplx x) {
  if (std::abs(x) < 1e-4) {
    const cplx x2 = x * x;
    return 1.0 + x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sinh(x) / x;
}

// sin^2(Omega t / 2) / Omega^2 as a function of Omega^2 (either sign).
double envelope_ratio(double omega2, double t) {
  const double half = 0.5 * t;
  if (std::abs(omega2) * half * half < 1e-8)
    return half * half * (1.0 - omega2 * half * half / 3.0);
  if (omega2 > 0.0) {
    const double s = std::sin(std::sqrt(omega2) * half);
    return s * s / omega2;
  }
  const double s = std::sinh(std::sqrt(-omega2) * half);
  return -s * s / omega2;
}

void check_time(const std::vector<double>& time) {
  for (double t : time)
    if (!(t >= 0.0) || !std::isfinite(t))
      throw DomainError("time grid values must be finite and >= 0 (measured from t0)");
}

}  // namespace

void TwoLevelNearHalfSpace::validate() const {
  if (!(frequency > 0.0) || !std::isfinite(frequency))
    throw DomainError("transition frequency must be positive");
  if (!(dipole_weight >= 0.0) || !std::isfinite(dipole_weight))
    throw DomainError("dipole weight must be >= 0");
  if (!(position > 0.0) || !std::isfinite(position))
    throw DomainError("atom position must be positive");
  if (is_ideal(material))
    throw UnsupportedModel("the half space needs a permittivity model");
}

bool TwoLevelNearHalfSpace::nonretarded() const noexcept {
  return position * frequency < 0.1;
}

double shift_map(const TwoLevelNearHalfSpace& sys, double shift) {
  const double w = sys.frequency + shift;
  if (!(w > 0.0)) throw DomainError("shifted transition frequency must stay positive");
  const cplx eps = epsilon_complex(sys.material, cplx(w, 0.0));
  return -near_field(sys, 3) / (32.0 * kPi) * reflection_weight(eps);
}

ShiftResult solve_shift(const TwoLevelNearHalfSpace& sys, const ShiftOptions& options) {
  sys.validate();
  ShiftResult out;
  if (sys.dipole_weight == 0.0) return out;
  const double tol = options.tol * sys.frequency;

  double x = 0.0, damping = 1.0, previous = 0.0;
  for (int i = 1; i <= options.max_iter; ++i) {
    const double r = shift_map(sys, x) - x;
    out.iterations = i;
    if (std::abs(r) < tol) {
      out.shift = x;
      out.residual = r;
      return out;
    }
    if (i > 1 && r * previous < 0.0) damping *= 0.5;
    previous = r;
    x += damping * r;
  }

  // Bracket the root of h(x) - x around the iterate and refine.
  const auto f = [&](double s) { return shift_map(sys, s) - s; };
  double span = std::max(std::abs(shift_map(sys, 0.0)), tol);
  double lo = -span, hi = span;
  double flo = f(lo), fhi = f(hi);
  for (int k = 0; k < 60 && flo * fhi > 0.0; ++k) {
    span *= 2.0;
    lo = std::max(-span, -0.999 * sys.frequency);
    hi = span;
    flo = f(lo);
    fhi = f(hi);
  }
  if (flo * fhi > 0.0)
    throw ConvergenceError("solve_shift: fixed-point iteration did not converge",
                           std::abs(previous));
  std::uintmax_t iters = 200;
  const auto [a, b] = boost::math::tools::toms748_solve(
      f, lo, hi, flo, fhi, [tol](double u, double v) { return std::abs(u - v) < tol; },
      iters);
  out.shift = 0.5 * (a + b);
  out.residual = f(out.shift);
  out.iterations += static_cast<int>(iters);
  out.bracketed = true;
  if (std::abs(out.residual) >= 10.0 * tol)
    throw ConvergenceError("solve_shift: no self-consistent shift found",
                           std::abs(out.residual));
  return out;
}

double width(const TwoLevelNearHalfSpace& sys, double shift) {
  sys.validate();
  const double w = sys.frequency + shift;
  if (!(w > 0.0)) throw DomainError("shifted transition frequency must stay positive");
  const cplx eps = epsilon_complex(sys.material, cplx(w, 0.0));
  return near_field(sys, 3) / (8.0 * kPi) * eps.imag() / std::norm(eps + 1.0);
}

LevelShift shift_and_width(const TwoLevelNearHalfSpace& sys, const ShiftOptions& options) {
  const ShiftResult s = solve_shift(sys, options);
  return {s.shift, width(sys, s.shift)};
}

double resonant_force(const TwoLevelNearHalfSpace& sys, const LevelShift& level) {
  sys.validate();
  const cplx omega(sys.frequency + level.shift, 0.5 * level.width);
  const cplx eps = epsilon_complex(sys.material, omega);
  return -3.0 * near_field(sys, 4) / (32.0 * kPi) * reflection_weight(eps);
}

double resonant_force(const TwoLevelNearHalfSpace& sys, const ShiftOptions& options) {
  return resonant_force(sys, shift_and_width(sys, options));
}

double resonant_force_perturbative(const TwoLevelNearHalfSpace& sys) {
  return resonant_force(sys, LevelShift{});
}

QuadResult offresonant_force(const TwoLevelNearHalfSpace& sys, const LevelShift& level,
                             double rel_tol) {
  sys.validate();
  if (sys.dipole_weight == 0.0) return {};
  const double w = sys.frequency + level.shift;
  const double h = 0.5 * level.width;
  if (!(w > 0.0)) throw DomainError("shifted transition frequency must stay positive");
  QuadSpec spec;
  spec.rel_tol = rel_tol;
  spec.scale = w;
  QuadResult r = integrate_semiinf(
      [&](double xi) {
        const double e = epsilon_ixi(sys.material, xi);
        const double lor = w / (w * w + (xi + h) * (xi + h)) *
                           (w * w + xi * xi + h * h) / (w * w + (xi - h) * (xi - h));
        return (e - 1.0) / (e + 1.0) * lor;
      },
      spec);
  const double pre = 3.0 * near_field(sys, 4) / (32.0 * kPi * kPi);
  r.value *= pre;
  r.error *= pre;
  r.abs_integral *= pre;
  return r;
}

QuadResult offresonant_force(const TwoLevelNearHalfSpace& sys, const ShiftOptions& options,
                             double rel_tol) {
  return offresonant_force(sys, shift_and_width(sys, options), rel_tol);
}

void QuasiMode::validate() const {
  if (!(linewidth >= 0.0) || !std::isfinite(linewidth))
    throw DomainError("quasi-mode linewidth must be >= 0");
  if (!(rabi >= 0.0) || !std::isfinite(rabi))
    throw DomainError("vacuum Rabi frequency must be >= 0");
  if (!std::isfinite(frequency) || !std::isfinite(atom_frequency) ||
      !std::isfinite(residual_width) || !std::isfinite(residual_shift))
    throw DomainError("quasi-mode parameters must be finite");
}

double QuasiMode::detuning() const noexcept {
  return frequency - (atom_frequency + residual_shift);
}

CouplingRegime classify(const QuasiMode& mode) noexcept {
  const double g = mode.linewidth;
  const double rabi = mode.rabi;
  const double delta = std::abs(mode.detuning());
  const double scale = g > 0.0 ? 2.0 * rabi * rabi / g
                               : std::numeric_limits<double>::infinity();
  if (g >= 20.0 * rabi || delta >= 10.0 * scale) return CouplingRegime::Weak;
  if (g <= 2.0 * rabi && delta <= 0.1 * scale) return CouplingRegime::Strong;
  return CouplingRegime::Intermediate;
}

ModeRoots mode_roots(const QuasiMode& mode) {
  mode.validate();
  const cplx a(0.5 * (mode.linewidth - mode.residual_width), mode.detuning());
  const cplx s = std::sqrt(a * a - mode.rabi * mode.rabi);
  ModeRoots r;
  r.plus = -0.5 * a - 0.5 * s;
  r.minus = -0.5 * a + 0.5 * s;
  if (std::abs(r.minus) < std::abs(r.plus)) std::swap(r.plus, r.minus);
  const cplx diff = r.minus - r.plus;
  if (std::abs(diff) <= 1e-14 * std::max(std::abs(a), mode.rabi)) {
    r.degenerate = true;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    r.c_plus = r.c_minus = cplx(nan, nan);
    return r;
  }
  r.c_plus = r.minus / diff;
  r.c_minus = -r.plus / diff;
  return r;
}

std::complex<double> weak_coupling_rate(const QuasiMode& mode) noexcept {
  const double d = mode.detuning();
  const double g = mode.linewidth;
  const double den = d * d + 0.25 * g * g;
  const double r2 = mode.rabi * mode.rabi;
  return {-r2 / 8.0 * g / den, r2 / 4.0 * d / den};
}

std::complex<double> upper_amplitude(const QuasiMode& mode, double t) {
  mode.validate();
  const cplx a(0.5 * (mode.linewidth - mode.residual_width), mode.detuning());
  const cplx s = std::sqrt(a * a - mode.rabi * mode.rabi);
  const cplx x = 0.5 * s * t;
  return std::exp(-0.5 * a * t) * (std::cosh(x) + 0.5 * a * t * sinhc(x));
}

EvolutionResult evolve_weak(double rate, const std::vector<double>& time) {
  if (!(rate >= 0.0) || !std::isfinite(rate)) throw DomainError("decay rate must be >= 0");
  check_time(time);
  EvolutionResult out;
  out.time = time;
  out.regime = CouplingRegime::Weak;
  out.population.reserve(time.size());
  out.force_scale.reserve(time.size());
  for (double t : time) {
    const double f = std::exp(-rate * t);
    out.population.push_back(f);
    out.force_scale.push_back(f);
  }
  return out;
}

EvolutionResult evolve_strong(const QuasiMode& mode, const std::vector<double>& time) {
  mode.validate();
  check_time(time);
  EvolutionResult out;
  out.time = time;
  out.regime = classify(mode);
  out.regime_warning = out.regime != CouplingRegime::Strong;
  const double d = mode.detuning();
  const double gd = mode.linewidth - mode.residual_width;
  const double gs = mode.linewidth + mode.residual_width;
  const double numerator = d * d - 0.25 * gd * gd;
  const double omega2 = mode.rabi * mode.rabi + numerator;
  out.population.reserve(time.size());
  out.force_scale.reserve(time.size());
  for (double t : time) {
    const double p = std::exp(-mode.residual_width * t) * std::norm(upper_amplitude(mode, t));
    out.population.push_back(p);
    out.force_scale.push_back(2.0 * std::exp(-0.5 * gs * t) * numerator *
                              envelope_ratio(omega2, t));
  }
  return out;
}

}  // namespace dispersion
