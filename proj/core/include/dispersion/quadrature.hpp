#pragma once

// Numerical engine shared by every force and potential in the library:
// adaptive Gauss-Kronrod integration on finite and semi-infinite ranges, an
// iterated (xi, q) driver and Matsubara summation with tail control.
//
// The 7/15-point Kronrod rule never samples interval endpoints, so kernels
// with removable 0/0 limits at xi = 0 or b = n xi are safe to pass as-is.
// Evaluation and reduction order are fixed; identical inputs produce
// bit-identical results.

#include <functional>

namespace dispersion {

enum class Substitution {
  Rational,     // x = x0 + s t / (1 - t)
  Exponential,  // x = x0 - s log(1 - t); exponentially decaying integrands only
};

struct QuadSpec {
  double rel_tol = 1e-8;
  double abs_floor = 0.0;
  int max_subdivisions = 2000;
  Substitution substitution = Substitution::Rational;
  // Length scale of the map (0, inf) -> (0, 1); nodes cluster around x ~ scale.
  double scale = 1.0;
  // Initial equal panels on the mapped interval before adaptive bisection.
  int initial_panels = 4;
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  // Integral of |f|, used to turn relative inner errors into absolute ones.
  double abs_integral = 0.0;
  long evaluations = 0;
  bool converged = true;

  bool within(double rel_tol, double abs_floor) const noexcept;
};

using Integrand = std::function<double(double)>;
using Integrand2 = std::function<double(double, double)>;

// Integral of f over [a, b] (finite).
QuadResult integrate_interval(const Integrand& f, double a, double b,
                              const QuadSpec& spec = {});

// Integral of f over (lower, infinity).
QuadResult integrate_semiinf(const Integrand& f, const QuadSpec& spec = {},
                             double lower = 0.0);

struct XiBOptions {
  QuadSpec outer{};
  QuadSpec inner{};
  // Refractive index n(xi) fixing the inner lower limit b = n(xi) xi.
  // Null means n == 1.
  std::function<double(double)> index;
  // Decay scale of the inner integrand as a function of xi; overrides
  // inner.scale when set.
  std::function<double(double)> inner_scale;
  // Once the inner integrals have used this many evaluations, the remaining
  // ones stop refining and the result is reported as not converged.
  long max_inner_evaluations = 20'000'000;
};

// \int_0^inf dxi \int_{n xi}^inf db F(xi, b).
// The tolerance budget is split evenly between the two levels; the reported
// error adds the outer estimate to the worst inner relative error times the
// integral of |F|.
QuadResult integrate_xi_b(const Integrand2& integrand, const XiBOptions& options);

enum class InnerVariable { B, Q };

// \int_0^inf dxi \int_0^inf dq K(xi, q). With InnerVariable::B the inner
// integral runs over b = sqrt(xi^2 + q^2) (q dq = b db).
QuadResult integrate_xi_q(const Integrand2& kernel, const QuadSpec& spec = {},
                          InnerVariable inner = InnerVariable::B);

struct MatsubaraSpec {
  double rel_tol = 1e-8;
  double abs_floor = 0.0;
  long max_terms = 200000;
};

// 2 kT [ f(0)/2 + sum_{n>=1} f(xi_n) ],  xi_n = 2 pi kT n.
// Stops once three consecutive terms each fall below tol * |partial sum|,
// then adds a geometric tail estimate built from the last terms.
QuadResult matsubara_sum(const std::function<QuadResult(double)>& term,
                         double kT, const MatsubaraSpec& spec = {});
QuadResult matsubara_sum(const Integrand& term, double kT,
                         const MatsubaraSpec& spec = {});

}  // namespace dispersion
