#include "dispersion/vdw.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "dispersion/error.hpp"
#include "dispersion/planar_greens.hpp"

namespace dispersion {
namespace {

constexpr double kPi = std::numbers::pi;

QuadSpec spec_of(const VdwOptions& o, double scale) {
  QuadSpec s;
  s.rel_tol = o.rel_tol;
  s.abs_floor = o.abs_floor;
  s.scale = scale;
  return s;
}

double xi_scale(double length, double w) {
  return 1.0 / (2.0 * length + (w > 0.0 ? 1.0 / w : 0.0));
}

void check_separation(double r) {
  if (!(r > 0.0) || !std::isfinite(r))
    throw DomainError("atom separation must be positive and finite");
}

QuadResult scaled(QuadResult r, double pre) {
  r.value *= pre;
  r.error *= std::abs(pre);
  r.abs_integral *= std::abs(pre);
  return r;
}

}  // namespace

double pp_kernel(double x) noexcept {
  return 2.0 * std::exp(-2.0 * x) * (3.0 + x * (6.0 + x * (5.0 + x * (2.0 + x))));
}

double pm_kernel(double x) noexcept {
  return 2.0 * std::exp(-2.0 * x) * (1.0 + x) * (1.0 + x);
}

QuadResult pp_potential(const Polarizability& a, const Polarizability& b, double r,
                        const VdwOptions& options) {
  check_separation(r);
  if (a.vanishes() || b.vanishes()) return {};
  const double w = std::max(a.max_frequency(), b.max_frequency());
  const QuadResult q = integrate_semiinf(
      [&](double xi) { return a(xi) * b(xi) * pp_kernel(xi * r); },
      spec_of(options, xi_scale(r, w)));
  return scaled(q, -1.0 / (32.0 * kPi * kPi * kPi * std::pow(r, 6)));
}

QuadResult pm_potential(const Polarizability& a, const Magnetizability& b, double r,
                        const VdwOptions& options) {
  check_separation(r);
  if (a.vanishes() || b.vanishes()) return {};
  const double w = std::max(a.max_frequency(), b.max_frequency());
  const QuadResult q = integrate_semiinf(
      [&](double xi) { return xi * xi * a(xi) * b(xi) * pm_kernel(xi * r); },
      spec_of(options, xi_scale(r, w)));
  return scaled(q, 1.0 / (32.0 * kPi * kPi * kPi * std::pow(r, 4)));
}

double pp_retarded(double alpha_a0, double alpha_b0, double r) {
  check_separation(r);
  return -23.0 * alpha_a0 * alpha_b0 / (64.0 * kPi * kPi * kPi * std::pow(r, 7));
}

double pm_retarded(double alpha_a0, double beta_b0, double r) {
  check_separation(r);
  return 7.0 * alpha_a0 * beta_b0 / (64.0 * kPi * kPi * kPi * std::pow(r, 7));
}

QuadResult pp_nonretarded(const Polarizability& a, const Polarizability& b, double r,
                          const VdwOptions& options) {
  check_separation(r);
  if (a.vanishes() || b.vanishes()) return {};
  const double w = std::max(a.max_frequency(), b.max_frequency());
  if (!(w > 0.0)) throw DomainError("nonretarded limit needs frequency-dependent responses");
  const QuadResult q = integrate_semiinf([&](double xi) { return a(xi) * b(xi); },
                                         spec_of(options, w));
  return scaled(q, -3.0 / (16.0 * kPi * kPi * kPi * std::pow(r, 6)));
}

QuadResult pm_nonretarded(const Polarizability& a, const Magnetizability& b, double r,
                          const VdwOptions& options) {
  check_separation(r);
  if (a.vanishes() || b.vanishes()) return {};
  const double w = std::max(a.max_frequency(), b.max_frequency());
  if (!(w > 0.0)) throw DomainError("nonretarded limit needs frequency-dependent responses");
  const QuadResult q = integrate_semiinf(
      [&](double xi) { return xi * xi * a(xi) * b(xi); }, spec_of(options, w));
  return scaled(q, 1.0 / (16.0 * kPi * kPi * kPi * std::pow(r, 4)));
}

QuadResult n_atom_potential(const std::vector<Eigen::Vector3d>& positions,
                            const std::vector<Polarizability>& responses,
                            const VdwOptions& options) {
  const std::size_t n = positions.size();
  if (n != responses.size())
    throw DomainError("n_atom_potential: positions and responses differ in length");
  if (n < 2 || n > 6) throw DomainError("n_atom_potential: N must lie in [2, 6]");
  double w = 0.0;
  double perimeter = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    detail::validate(responses[i].model());
    w = std::max(w, responses[i].max_frequency());
    for (std::size_t j = i + 1; j < n; ++j) {
      const double r = (positions[i] - positions[j]).norm();
      if (!(r > 0.0)) throw DegeneratePoint("n_atom_potential: coincident atoms");
      perimeter = std::max(perimeter, r);
    }
  }
  for (const auto& a : responses)
    if (a.vanishes()) return {};
  perimeter *= static_cast<double>(n) / 2.0;

  // Cycles are counted once per starting atom and per orientation; fixing the
  // first atom removes the rotations and leaves (N-1)! terms.
  std::vector<int> rest(n - 1);
  std::iota(rest.begin(), rest.end(), 1);
  std::vector<std::vector<int>> cycles;
  do {
    std::vector<int> c{0};
    c.insert(c.end(), rest.begin(), rest.end());
    cycles.push_back(std::move(c));
  } while (std::next_permutation(rest.begin(), rest.end()));

  const bool two = n == 2;
  const double nn = static_cast<double>(n);
  const double sign = (n % 2 == 0) ? -1.0 : 1.0;
  // (-1)^{N-1} / ((1 + delta_2N) pi) x 1/((2 - delta_2N) N) x N (rotations)
  const double pre = sign / ((two ? 2.0 : 1.0) * kPi) / ((two ? 1.0 : 2.0) * nn) * nn;

  std::vector<Eigen::Matrix3d> g(n * n);
  const QuadResult q = integrate_semiinf(
      [&](double xi) {
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = i + 1; j < n; ++j) {
            g[i * n + j] = scaled_free_space_green(positions[i] - positions[j], xi);
            g[j * n + i] = g[i * n + j];
          }
        double prod = 1.0;
        for (const auto& a : responses) prod *= a(xi);
        double sum = 0.0;
        for (const auto& c : cycles) {
          Eigen::Matrix3d m = g[c[0] * n + c[1]];
          for (std::size_t k = 1; k < n; ++k)
            m = m * g[c[k] * n + c[(k + 1) % n]];
          sum += m.trace();
        }
        return prod * sum;
      },
      spec_of(options, xi_scale(perimeter, w)));
  return scaled(q, pre);
}

QuadResult pairwise_halfspace_pressure(const Polarizability& a, const Polarizability& b,
                                       double d, const VdwOptions& options) {
  check_separation(d);
  if (a.vanishes() || b.vanishes()) return {};
  // P = -2 pi \int_d^inf dr (r - d) r U(r)
  VdwOptions inner = options;
  inner.rel_tol *= 0.1;
  QuadSpec spec = spec_of(options, d);
  const QuadResult q = integrate_semiinf(
      [&](double r) { return (r - d) * r * pp_potential(a, b, r, inner).value; }, spec, d);
  return scaled(q, -2.0 * kPi);
}

PowerLawFit power_law_fit(const std::function<double(double)>& potential, double r_lo,
                          double r_hi, int n_points) {
  if (!(r_lo > 0.0) || !(r_hi > r_lo) || n_points < 2)
    throw DomainError("power_law_fit: need 0 < r_lo < r_hi and at least two points");
  std::vector<double> x(n_points), y(n_points);
  double sign = 0.0;
  for (int i = 0; i < n_points; ++i) {
    const double t = static_cast<double>(i) / (n_points - 1);
    const double r = r_lo * std::pow(r_hi / r_lo, t);
    const double u = potential(r);
    if (u == 0.0 || !std::isfinite(u))
      throw DomainError("power_law_fit: potential vanishes or is not finite in the window");
    const double s = u > 0.0 ? 1.0 : -1.0;
    if (sign != 0.0 && s != sign)
      throw DomainError("power_law_fit: sign change inside the window (mixed regime)");
    sign = s;
    x[i] = std::log(r);
    y[i] = std::log(std::abs(u));
  }
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n_points;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n_points;
  double sxy = 0.0, sxx = 0.0;
  for (int i = 0; i < n_points; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  PowerLawFit fit;
  fit.exponent = sxy / sxx;
  const double c = my - fit.exponent * mx;
  fit.prefactor = std::exp(c);
  fit.sign = sign;
  for (int i = 0; i < n_points; ++i)
    fit.max_residual = std::max(fit.max_residual, std::abs(y[i] - c - fit.exponent * x[i]));
  return fit;
}

}  // namespace dispersion
