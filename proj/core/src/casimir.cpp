#include "dispersion/casimir.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include "dispersion/error.hpp"

namespace dispersion {
namespace {

constexpr double kPi = std::numbers::pi;

double largest_frequency(const PlanarScenario& s) {
  double w = characteristic_frequency(s.interspace);
  for (const LayerStack* st : {&s.left, &s.right})
    for (const auto& l : st->layers())
      if (!is_ideal(l.material)) w = std::max(w, characteristic_frequency(l.material));
  return w;
}

void check_interspace(const PlanarScenario& s) {
  s.validate();
  if (!std::isfinite(static_epsilon(s.interspace)) ||
      !std::isfinite(static_mu(s.interspace)))
    throw UnsupportedModel("interspace medium must have finite static response");
}

// Everything that depends on xi only.
struct FrequencySlice {
  double xi = 0.0;
  double n = 1.0;      // refractive index of the interspace
  double mu = 1.0;
  double minus = 0.0;  // 1 - 1/n^2
  double plus = 2.0;   // 1 + 1/n^2
  StackResponse left;
  StackResponse right;

  FrequencySlice(const PlanarScenario& s, double xi_,
                 ZeroFrequencyPrescription pr)
      : xi(xi_),
        left(s.left, s.interspace, xi_, pr),
        right(s.right, s.interspace, xi_, pr) {
    const double eps = epsilon_ixi(s.interspace, xi);
    mu = mu_ixi(s.interspace, xi);
    n = std::sqrt(eps * mu);
    minus = 1.0 - 1.0 / (eps * mu);
    plus = 1.0 + 1.0 / (eps * mu);
  }
};

enum class Terms { Pressure, Stress };

// mu g(z, xi, b) with the interior point z, or the wall-limit form for the
// pressure. Written in b so that q dq / b = db.
double kernel(const FrequencySlice& f, double d, double z, Terms terms, double b) {
  const double nxi = f.n * f.xi;
  const double q2 = std::max(0.0, (b - nxi) * (b + nxi));
  const Reflections rm = f.left.at(q2);
  const Reflections rp = f.right.at(q2);
  const double e2d = decay(-2.0 * b * d);
  const double Ds = 1.0 - rm.s * rp.s * e2d;
  const double Dp = 1.0 - rm.p * rp.p * e2d;
  if (!(Ds > 0.0) || !(Dp > 0.0))
    throw DomainError("cavity denominator D_sigma <= 0: unphysical reflection data");
  const double b2 = b * b;
  double g = -2.0 * (b2 * f.plus + q2 * f.minus) * e2d * rm.s * rp.s / Ds -
             2.0 * (b2 * f.plus - q2 * f.minus) * e2d * rm.p * rp.p / Dp;
  if (f.minus != 0.0) {
    const double k2 = (b2 - q2) * f.minus;
    if (terms == Terms::Pressure) {
      const double ws = e2d * rm.s * (1.0 + rp.s * rp.s) / Ds;
      const double wp = e2d * rm.p * (1.0 + rp.p * rp.p) / Dp;
      g += k2 * (ws - wp);
    } else {
      const double ez = decay(-2.0 * b * z), edz = decay(-2.0 * b * (d - z));
      g += k2 * ((ez * rm.s + edz * rp.s) / Ds - (ez * rm.p + edz * rp.p) / Dp);
    }
  }
  return f.mu * g;
}

QuadSpec base_spec(const CasimirOptions& o) {
  QuadSpec s;
  s.rel_tol = o.rel_tol;
  s.abs_floor = o.abs_floor;
  return s;
}

double inner_scale(double d, double z, Terms terms) {
  if (terms == Terms::Pressure) return 1.0 / d;
  return 0.5 / std::min(z, d - z);
}

QuadResult spectral(const PlanarScenario& s, double xi, double z, Terms terms,
                    const CasimirOptions& o, QuadSpec spec) {
  const FrequencySlice f(s, xi, o.prescription);
  spec.scale = inner_scale(s.width, z, terms);
  const double d = s.width;
  QuadResult r = integrate_semiinf(
      [&](double b) { return kernel(f, d, z, terms, b); }, spec, f.n * xi);
  const double pre = -1.0 / (8.0 * kPi);
  r.value *= pre;
  r.error *= -pre;
  r.abs_integral *= -pre;
  return r;
}

PressureResult to_pressure(const QuadResult& r, long terms) {
  PressureResult p;
  p.value = r.value;
  p.error = r.error;
  p.converged = r.converged;
  p.evaluations = r.evaluations;
  p.matsubara_terms = terms;
  return p;
}

PressureResult zero_temperature(const PlanarScenario& s, double z, Terms terms,
                                const CasimirOptions& o) {
  if (s.left.transparent() && std::holds_alternative<Vacuum>(s.interspace))
    return {};
  if (s.right.transparent() && std::holds_alternative<Vacuum>(s.interspace))
    return {};
  const double d = s.width;
  const double n0 = std::sqrt(static_epsilon(s.interspace) * static_mu(s.interspace));
  const double w = largest_frequency(s);
  const double length = 2.0 * n0 * (terms == Terms::Pressure ? d : std::min(z, d - z));
  XiBOptions xo;
  xo.outer = base_spec(o);
  xo.inner = base_spec(o);
  xo.outer.scale = 1.0 / (length + (w > 0.0 ? 1.0 / w : 0.0));
  xo.inner.scale = inner_scale(d, z, terms);
  // The frequency slice is rebuilt per b only through this cache.
  double cached_xi = -1.0;
  std::optional<FrequencySlice> slice;
  const auto at = [&](double xi) -> const FrequencySlice& {
    if (xi != cached_xi) {
      slice.emplace(s, xi, o.prescription);
      cached_xi = xi;
    }
    return *slice;
  };
  xo.index = [&](double xi) { return at(xi).n; };
  QuadResult r = integrate_xi_b(
      [&](double xi, double b) { return kernel(at(xi), d, z, terms, b); }, xo);
  const double pre = -1.0 / (8.0 * kPi * kPi);
  r.value *= pre;
  r.error *= -pre;
  return to_pressure(r, 0);
}

PressureResult finite_temperature(const PlanarScenario& s, double kT, double z,
                                  Terms terms, const CasimirOptions& o) {
  if (!(kT > 0.0)) throw DomainError("temperature must be positive");
  MatsubaraSpec ms;
  ms.rel_tol = o.rel_tol;
  ms.abs_floor = o.abs_floor;
  ms.max_terms = o.max_matsubara_terms;
  QuadSpec inner = base_spec(o);
  inner.rel_tol *= 0.5;
  ms.rel_tol *= 0.5;
  long count = 0;
  const QuadResult r = matsubara_sum(
      [&](double xi) {
        ++count;
        return spectral(s, xi, z, terms, o, inner);
      },
      kT, ms);
  return to_pressure(r, count);
}

PressureResult dispatch(const PlanarScenario& s, double z, Terms terms,
                        const TemperatureSpec& temp, const CasimirOptions& o) {
  if (const auto* ft = std::get_if<FiniteT>(&temp))
    return finite_temperature(s, ft->kT, z, terms, o);
  return zero_temperature(s, z, terms, o);
}

void check_static(double eps, double mu, double d) {
  if (!(eps >= 1.0) || !(mu >= 1.0) || !std::isfinite(eps) || !std::isfinite(mu))
    throw DomainError("static eps and mu must be finite and >= 1");
  if (!(d > 0.0)) throw DomainError("distances must be positive");
}

double ideal_factor(double eps, double mu) {
  return kPi * kPi / 240.0 * std::sqrt(mu / eps) * (2.0 / 3.0 + 1.0 / (3.0 * eps * mu));
}

}  // namespace

PressureResult casimir_pressure(const PlanarScenario& scenario,
                                const TemperatureSpec& temp,
                                const CasimirOptions& options) {
  check_interspace(scenario);
  return dispatch(scenario, scenario.width, Terms::Pressure, temp, options);
}

PressureResult stress_zz(const PlanarScenario& scenario, double z,
                         const TemperatureSpec& temp, const CasimirOptions& options) {
  check_interspace(scenario);
  if (!(z > 0.0 && z < scenario.width))
    throw DomainError("stress_zz: z must lie in (0, d)");
  return dispatch(scenario, z, Terms::Stress, temp, options);
}

PressureResult matsubara_pressure(const PlanarScenario& scenario, double kT,
                                  const CasimirOptions& options) {
  check_interspace(scenario);
  return finite_temperature(scenario, kT, scenario.width, Terms::Pressure, options);
}

QuadResult pressure_spectral_density(const PlanarScenario& scenario, double xi,
                                     const CasimirOptions& options) {
  check_interspace(scenario);
  if (xi < 0.0) throw DomainError("xi must be non-negative");
  return spectral(scenario, xi, scenario.width, Terms::Pressure, options,
                  base_spec(options));
}

double perfect_mirror_pressure(double eps, double mu, double d) {
  check_static(eps, mu, d);
  return ideal_factor(eps, mu) / std::pow(d, 4);
}

double plate_in_cavity_force(double eps, double mu, double d_left, double d_right) {
  check_static(eps, mu, d_left);
  check_static(eps, mu, d_right);
  return ideal_factor(eps, mu) * (std::pow(d_right, -4) - std::pow(d_left, -4));
}

double plate_in_cavity_force_minkowski(double eps, double d_left, double d_right) {
  check_static(eps, 1.0, d_left);
  check_static(eps, 1.0, d_right);
  return kPi * kPi / 240.0 / std::sqrt(eps) *
         (std::pow(d_right, -4) - std::pow(d_left, -4));
}

}  // namespace dispersion
