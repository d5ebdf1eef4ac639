#include "dispersion/cp.hpp"

#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

#include "dispersion/error.hpp"

namespace dispersion {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Walls seen by the atom, in the common cavity form. A single wall has no
// right stack.
struct Walls {
  LayerStack left;
  std::optional<LayerStack> right;
  double width = kInf;
};

Walls walls_of(const AtomGeometry& g) {
  return std::visit(
      [](const auto& geo) -> Walls {
        using G = std::decay_t<decltype(geo)>;
        if constexpr (std::is_same_v<G, HalfSpaceGeometry>) {
          return {geo.stack, std::nullopt, kInf};
        } else if constexpr (std::is_same_v<G, PlateGeometry>) {
          if (!(geo.thickness > 0.0) || !std::isfinite(geo.thickness))
            throw DomainError("plate thickness must be positive and finite");
          if (is_ideal(geo.material))
            throw InvalidStack("a finite plate cannot be an ideal-limit marker");
          return {LayerStack::slab(geo.material, geo.thickness), std::nullopt, kInf};
        } else if constexpr (std::is_same_v<G, CavityGeometry>) {
          if (!(geo.width > 0.0) || !std::isfinite(geo.width))
            throw DomainError("cavity width must be positive and finite");
          return {geo.left, geo.right, geo.width};
        } else {
          return {LayerStack::half_space(geo.kind == MirrorKind::Conductor
                                             ? MaterialModel{PerfectConductor{}}
                                             : MaterialModel{PerfectlyPermeable{}}),
                  std::nullopt, kInf};
        }
      },
      g);
}

double stack_frequency(const LayerStack& s) {
  double w = 0.0;
  for (const auto& l : s.layers())
    if (!is_ideal(l.material)) w = std::max(w, characteristic_frequency(l.material));
  return w;
}

double integration_scale(double length, double w) {
  return 1.0 / (2.0 * length + (w > 0.0 ? 1.0 / w : 0.0));
}

CpResult from_quad(const QuadResult& r, double pre) {
  CpResult c;
  c.value = pre * r.value;
  c.error = std::abs(pre) * r.error;
  c.converged = r.converged;
  c.evaluations = r.evaluations;
  return c;
}

QuadSpec spec_of(const CpOptions& o) {
  QuadSpec s;
  s.rel_tol = o.rel_tol;
  s.abs_floor = o.abs_floor;
  return s;
}

enum class Quantity { Potential, Force };

struct Slice {
  double xi = -1.0;
  double alpha = 0.0;
  std::optional<StackResponse> left, right;
};

CpResult planar(const AtomScenario& scn, const CpOptions& o, Quantity what) {
  scn.validate();
  const Walls w = walls_of(scn.geometry);
  const double z = scn.position;
  const double d = w.width;
  const bool has_right = w.right.has_value() && !w.right->transparent();
  const bool has_left = !w.left.transparent();
  if (scn.atom.vanishes() || (!has_left && !has_right)) return {};

  double wmax = std::max(scn.atom.max_frequency(), stack_frequency(w.left));
  if (has_right) wmax = std::max(wmax, stack_frequency(*w.right));
  const double near = has_right ? std::min(z, d - z) : z;

  Slice slice;
  const auto at = [&](double xi) -> const Slice& {
    if (xi != slice.xi) {
      slice.xi = xi;
      slice.alpha = scn.atom(xi);
      slice.left.emplace(w.left, Vacuum{}, xi);
      if (has_right) slice.right.emplace(*w.right, Vacuum{}, xi);
    }
    return slice;
  };

  const auto integrand = [&](double xi, double b) {
    const Slice& s = at(xi);
    const double q2 = std::max(0.0, (b - xi) * (b + xi));
    const double xi2 = xi * xi;
    const double pf = xi2 + 2.0 * q2;
    const Reflections rm = s.left->at(q2);
    Reflections rp{0.0, 0.0};
    double Ds = 1.0, Dp = 1.0;
    if (has_right) {
      rp = s.right->at(q2);
      if (o.multiple_reflections) {
        const double e2d = decay(-2.0 * b * d);
        Ds = 1.0 - rm.s * rp.s * e2d;
        Dp = 1.0 - rm.p * rp.p * e2d;
        if (!(Ds > 0.0) || !(Dp > 0.0))
          throw DomainError("cavity denominator D_sigma <= 0: unphysical reflection data");
      }
    }
    const double left = decay(-2.0 * b * z) * (xi2 * rm.s / Ds - pf * rm.p / Dp);
    double right = 0.0;
    if (has_right)
      right = decay(-2.0 * b * (d - z)) * (xi2 * rp.s / Ds - pf * rp.p / Dp);
    const double v = what == Quantity::Potential ? left + right
                                                 : 2.0 * b * (left - right);
    return s.alpha * v;
  };

  XiBOptions xo;
  xo.outer = spec_of(o);
  xo.inner = spec_of(o);
  xo.outer.scale = integration_scale(near, wmax);
  xo.inner.scale = 0.5 / near;
  return from_quad(integrate_xi_b(integrand, xo), 1.0 / (8.0 * kPi * kPi));
}

void check_position(double z) {
  if (!(z > 0.0) || !std::isfinite(z))
    throw DomainError("atom position must be positive and finite");
}

double ratio_or_limit(double x, double s) {
  // (x - s) / (x + s), with x = +inf giving 1
  if (std::isinf(x)) return 1.0;
  return (x - s) / (x + s);
}

}  // namespace

void AtomScenario::validate() const {
  detail::validate(atom.model());
  check_position(position);
  if (const auto* c = std::get_if<CavityGeometry>(&geometry)) {
    if (!(position < c->width))
      throw DomainError("atom position must lie inside the cavity (0, d)");
  }
}

CpResult cp_potential(const AtomScenario& scenario, const CpOptions& options) {
  return planar(scenario, options, Quantity::Potential);
}

CpResult cp_force(const AtomScenario& scenario, const CpOptions& options) {
  return planar(scenario, options, Quantity::Force);
}

CpResult cp_potential_perfect_mirror(const Polarizability& atom, double z,
                                     MirrorKind kind, const CpOptions& options) {
  check_position(z);
  if (atom.vanishes()) return {};
  QuadSpec spec = spec_of(options);
  spec.scale = integration_scale(z, atom.max_frequency());
  const QuadResult r = integrate_semiinf(
      [&](double xi) {
        const double x = xi * z;
        return atom(xi) * decay(-2.0 * x) * (1.0 + 2.0 * x + 2.0 * x * x);
      },
      spec);
  const double sign = kind == MirrorKind::Conductor ? -1.0 : 1.0;
  return from_quad(r, sign / (16.0 * kPi * kPi * z * z * z));
}

double retarded_halfspace_integral(double eps, double mu, double rel_tol) {
  if (!(eps >= 1.0) || !(mu >= 1.0))
    throw DomainError("static eps and mu must be >= 1");
  if (std::isinf(eps) && std::isinf(mu))
    throw DomainError("eps and mu cannot both be infinite");
  if (std::isinf(eps)) return 2.0;
  if (std::isinf(mu)) return -2.0;
  const double k = eps * mu - 1.0;
  QuadSpec spec;
  spec.rel_tol = rel_tol;
  spec.abs_floor = 1e-300;
  const QuadResult r = integrate_interval(
      [&](double t) {
        const double t2 = t * t;
        const double s = std::sqrt(k * t2 + 1.0);
        return (2.0 - t2) * ratio_or_limit(eps, s) - t2 * ratio_or_limit(mu, s);
      },
      0.0, 1.0, spec);
  return r.value;
}

double cp_retarded_halfspace_asymptote(double alpha0, double eps, double mu, double z) {
  check_position(z);
  if (alpha0 < 0.0) throw DomainError("alpha(0) must be >= 0");
  return -3.0 * alpha0 * retarded_halfspace_integral(eps, mu) /
         (64.0 * kPi * kPi * std::pow(z, 4));
}

CpResult nonretarded_asymptote(const Polarizability& atom, const MaterialModel& material,
                               double z, NonretardedKind kind, const CpOptions& options) {
  check_position(z);
  if (is_ideal(material))
    throw UnsupportedModel("nonretarded asymptotes need a material with response functions");
  if (atom.vanishes()) return {};
  QuadSpec spec = spec_of(options);
  spec.scale = std::max({atom.max_frequency(), characteristic_frequency(material), 1e-300});
  if (kind == NonretardedKind::Dielectric) {
    const QuadResult r = integrate_semiinf(
        [&](double xi) {
          const double e = epsilon_ixi(material, xi);
          return atom(xi) * ratio_or_limit(e, 1.0);
        },
        spec);
    return from_quad(r, -1.0 / (16.0 * kPi * kPi * z * z * z));
  }
  const QuadResult r = integrate_semiinf(
      [&](double xi) {
        const double m = mu_ixi(material, xi);
        return xi * xi * atom(xi) * (m - 1.0) * (m + 3.0) / (m + 1.0);
      },
      spec);
  return from_quad(r, 1.0 / (32.0 * kPi * kPi * z));
}

CpResult thin_plate_asymptote(const Polarizability& atom, const MaterialModel& material,
                              double z, double d, ThinPlateForm form,
                              const CpOptions& options) {
  check_position(z);
  if (!(d > 0.0) || !std::isfinite(d)) throw DomainError("plate thickness must be positive");
  if (is_ideal(material))
    throw UnsupportedModel("thin-plate asymptotes need a material with response functions");
  const double e0 = static_epsilon(material), m0 = static_mu(material);
  const bool warn = !(d < 0.1 * z / std::sqrt(e0 * m0));
  CpResult out;
  if (atom.vanishes()) {
    out.regime_warning = warn;
    return out;
  }
  QuadSpec spec = spec_of(options);
  const double wmax = std::max(atom.max_frequency(), characteristic_frequency(material));
  spec.scale = std::max(wmax, 1e-300);
  switch (form) {
    case ThinPlateForm::Retarded: {
      if (!std::isfinite(e0) || !std::isfinite(m0))
        throw UnsupportedModel("retarded thin-plate limit needs finite static response");
      out.value = -atom.static_value() * d / (160.0 * kPi * kPi * std::pow(z, 5)) *
                  ((14.0 * e0 * e0 - 9.0) / e0 - (6.0 * m0 * m0 - 1.0) / m0);
      break;
    }
    case ThinPlateForm::NonretardedDielectric: {
      const QuadResult r = integrate_semiinf(
          [&](double xi) {
            const double e = epsilon_ixi(material, xi);
            return atom(xi) * (e * e - 1.0) / e;
          },
          spec);
      out = from_quad(r, -3.0 * d / (64.0 * kPi * kPi * std::pow(z, 4)));
      break;
    }
    case ThinPlateForm::NonretardedMagnetic: {
      const QuadResult r = integrate_semiinf(
          [&](double xi) {
            const double m = mu_ixi(material, xi);
            return xi * xi * atom(xi) * (m - 1.0) * (3.0 * m + 1.0) / m;
          },
          spec);
      out = from_quad(r, d / (64.0 * kPi * kPi * z * z));
      break;
    }
    case ThinPlateForm::Full: {
      XiBOptions xo;
      xo.outer = spec_of(options);
      xo.inner = spec_of(options);
      xo.outer.scale = integration_scale(z, wmax);
      xo.inner.scale = 0.5 / z;
      double cached = -1.0, eps = 1.0, mu = 1.0, alpha = 0.0;
      const auto integrand = [&](double xi, double b) {
        if (xi != cached) {
          cached = xi;
          eps = epsilon_ixi(material, xi);
          mu = mu_ixi(material, xi);
          alpha = atom(xi);
        }
        const double xi2 = xi * xi;
        const double q2 = std::max(0.0, (b - xi) * (b + xi));
        const double b1sq = eps * mu * xi2 + q2;
        const double b2 = b * b;
        const double s = xi2 * (mu * mu * b2 - b1sq) / (2.0 * mu * b);
        const double p = (xi2 + 2.0 * q2) * (eps * eps * b2 - b1sq) / (2.0 * eps * b);
        return alpha * decay(-2.0 * b * z) * (s - p);
      };
      out = from_quad(integrate_xi_b(integrand, xo), d / (8.0 * kPi * kPi));
      break;
    }
  }
  out.regime_warning = warn;
  return out;
}

std::vector<BorderlinePoint> repulsion_borderline(const std::vector<double>& eps_grid) {
  std::vector<BorderlinePoint> out;
  out.reserve(eps_grid.size());
  for (const double eps : eps_grid) {
    if (!(eps >= 1.0) || !std::isfinite(eps))
      throw DomainError("borderline: eps grid values must be finite and >= 1");
    BorderlinePoint pt{eps, std::nullopt};
    if (eps == 1.0) {
      pt.mu = 1.0;
      out.push_back(pt);
      continue;
    }
    const auto f = [eps](double mu) { return retarded_halfspace_integral(eps, mu); };
    double lo = 1.0, hi = 2.0 * eps;
    double flo = f(lo), fhi = f(hi);
    while (fhi > 0.0 && hi < 1e8 * eps) {
      lo = hi;
      flo = fhi;
      hi *= 2.0;
      fhi = f(hi);
    }
    if (flo > 0.0 && fhi < 0.0) {
      std::uintmax_t iters = 200;
      const auto [a, b] = boost::math::tools::toms748_solve(
          f, lo, hi, flo, fhi, boost::math::tools::eps_tolerance<double>(48), iters);
      pt.mu = 0.5 * (a + b);
    }
    out.push_back(pt);
  }
  return out;
}

}  // namespace dispersion
