#include "dispersion/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "dispersion/error.hpp"

namespace dispersion {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// QUADPACK 7/15 Gauss-Kronrod abscissae and weights.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a = 0.0;
  double b = 0.0;
  double value = 0.0;
  double error = 0.0;
  double abs_value = 0.0;
};

Panel qk15(const Integrand& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double resg = fc * kWg[3];
  double resk = fc * kWgk[7];
  double resabs = std::abs(resk);
  std::array<double, 7> f1{}, f2{};
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    f1[j] = f(center - dx);
    f2[j] = f(center + dx);
    const double s = f1[j] + f2[j];
    resk += kWgk[j] * s;
    resabs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
    if (j % 2 == 1) resg += kWg[j / 2] * s;
  }
  const double mean = 0.5 * resk;
  double resasc = kWgk[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j)
    resasc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));

  Panel p{a, b, resk * half, std::abs((resk - resg) * half),
          resabs * std::abs(half)};
  resasc *= std::abs(half);
  if (resasc != 0.0 && p.error != 0.0)
    p.error = resasc * std::min(1.0, std::pow(200.0 * p.error / resasc, 1.5));
  if (p.abs_value > std::numeric_limits<double>::min() / (50.0 * kEps))
    p.error = std::max(50.0 * kEps * p.abs_value, p.error);
  if (!std::isfinite(p.value) || !std::isfinite(p.error))
    throw DomainError("quadrature: integrand returned a non-finite value");
  return p;
}

struct ByError {
  bool operator()(const Panel& x, const Panel& y) const {
    if (x.error != y.error) return x.error < y.error;
    return x.a > y.a;
  }
};

QuadResult adaptive(const Integrand& f, double a, double b, const QuadSpec& spec) {
  if (!(b > a)) return {};
  const int panels = std::max(1, spec.initial_panels);
  std::priority_queue<Panel, std::vector<Panel>, ByError> queue;
  QuadResult r;
  const double width = (b - a) / panels;
  for (int i = 0; i < panels; ++i) {
    const double lo = a + i * width;
    const double hi = (i + 1 == panels) ? b : a + (i + 1) * width;
    queue.push(qk15(f, lo, hi));
    r.evaluations += 15;
  }
  int subdivisions = 0;
  const auto totals = [&queue](double& value, double& error, double& absval) {
    // Sum in a fixed order for reproducibility.
    std::vector<Panel> all;
    auto copy = queue;
    while (!copy.empty()) {
      all.push_back(copy.top());
      copy.pop();
    }
    std::sort(all.begin(), all.end(),
              [](const Panel& x, const Panel& y) { return x.a < y.a; });
    value = error = absval = 0.0;
    for (const auto& p : all) {
      value += p.value;
      error += p.error;
      absval += p.abs_value;
    }
  };

  // Running totals keep the loop O(log n); the final result is recomputed in
  // interval order.
  double value = 0.0, error = 0.0;
  {
    double absval = 0.0;
    totals(value, error, absval);
  }
  bool converged = true;
  while (error > std::max(spec.abs_floor, spec.rel_tol * std::abs(value))) {
    if (subdivisions >= spec.max_subdivisions) {
      converged = false;
      break;
    }
    const Panel worst = queue.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b) ||
        (worst.b - worst.a) < 16.0 * kEps * std::max(1.0, std::abs(mid))) {
      converged = false;
      break;
    }
    queue.pop();
    const Panel left = qk15(f, worst.a, mid);
    const Panel right = qk15(f, mid, worst.b);
    r.evaluations += 30;
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
    ++subdivisions;
  }
  totals(r.value, r.error, r.abs_integral);
  r.converged = converged ||
                r.error <= std::max(spec.abs_floor, spec.rel_tol * std::abs(r.value));
  return r;
}

Integrand mapped(const Integrand& f, const QuadSpec& spec, double lower) {
  const double s = spec.scale > 0.0 ? spec.scale : 1.0;
  if (spec.substitution == Substitution::Exponential) {
    return [&f, s, lower](double t) {
      const double u = 1.0 - t;
      const double x = lower - s * std::log(u);
      if (!std::isfinite(x)) return 0.0;
      const double fx = f(x);
      return fx == 0.0 ? 0.0 : fx * s / u;
    };
  }
  return [&f, s, lower](double t) {
    const double u = 1.0 - t;
    const double x = lower + s * t / u;
    if (!std::isfinite(x)) return 0.0;
    const double fx = f(x);
    return fx == 0.0 ? 0.0 : fx * s / (u * u);
  };
}

}  // namespace

bool QuadResult::within(double rel_tol, double abs_floor) const noexcept {
  return error <= std::max(abs_floor, rel_tol * std::abs(value));
}

QuadResult integrate_interval(const Integrand& f, double a, double b,
                              const QuadSpec& spec) {
  if (b < a) {
    QuadResult r = adaptive(f, b, a, spec);
    r.value = -r.value;
    return r;
  }
  return adaptive(f, a, b, spec);
}

QuadResult integrate_semiinf(const Integrand& f, const QuadSpec& spec,
                             double lower) {
  const Integrand g = mapped(f, spec, lower);
  return adaptive(g, 0.0, 1.0, spec);
}

QuadResult integrate_xi_b(const Integrand2& integrand, const XiBOptions& options) {
  QuadSpec outer = options.outer;
  QuadSpec inner = options.inner;
  outer.rel_tol *= 0.5;
  inner.rel_tol *= 0.5;

  double worst_inner_rel = 0.0;
  long inner_evaluations = 0;
  bool inner_converged = true;

  const Integrand outer_f = [&](double xi) {
    const double n = options.index ? options.index(xi) : 1.0;
    QuadSpec spec = inner;
    if (inner_evaluations > options.max_inner_evaluations) {
      spec.max_subdivisions = 0;
      inner_converged = false;
    }
    if (options.inner_scale) spec.scale = options.inner_scale(xi);
    const Integrand inner_f = [&](double b) { return integrand(xi, b); };
    const QuadResult r = integrate_semiinf(inner_f, spec, n * xi);
    inner_evaluations += r.evaluations;
    inner_converged = inner_converged && r.converged;
    if (r.abs_integral > 0.0)
      worst_inner_rel = std::max(worst_inner_rel, r.error / r.abs_integral);
    return r.value;
  };
  QuadResult r = integrate_semiinf(outer_f, outer);
  r.error += worst_inner_rel * r.abs_integral;
  r.evaluations += inner_evaluations;
  r.converged = r.converged && inner_converged;
  return r;
}

QuadResult integrate_xi_q(const Integrand2& kernel, const QuadSpec& spec,
                          InnerVariable inner) {
  QuadSpec half = spec;
  half.rel_tol *= 0.5;
  double worst_inner_rel = 0.0;
  long inner_evaluations = 0;
  bool inner_converged = true;
  const Integrand outer_f = [&](double xi) {
    Integrand inner_f;
    if (inner == InnerVariable::Q) {
      inner_f = [&](double q) { return kernel(xi, q); };
    } else {
      // b = xi + s^2 removes the 1/sqrt(b - xi) of q dq = b db at b = xi.
      inner_f = [&](double s) {
        const double b = xi + s * s;
        const double root = std::sqrt(b + xi);
        return 2.0 * kernel(xi, s * root) * b / root;
      };
    }
    const QuadResult r = integrate_semiinf(inner_f, half);
    inner_evaluations += r.evaluations;
    inner_converged = inner_converged && r.converged;
    if (r.abs_integral > 0.0)
      worst_inner_rel = std::max(worst_inner_rel, r.error / r.abs_integral);
    return r.value;
  };
  QuadResult r = integrate_semiinf(outer_f, half);
  r.error += worst_inner_rel * r.abs_integral;
  r.evaluations += inner_evaluations;
  r.converged = r.converged && inner_converged;
  return r;
}

QuadResult matsubara_sum(const std::function<QuadResult(double)>& term,
                         double kT, const MatsubaraSpec& spec) {
  if (!(kT > 0.0)) throw DomainError("matsubara_sum: temperature must be positive");
  const double step = 2.0 * M_PI * kT;

  QuadResult first = term(0.0);
  double sum = 0.5 * first.value;
  double abs_sum = 0.5 * std::abs(first.value);
  double err = 0.5 * first.error;
  long evaluations = first.evaluations;
  bool converged = first.converged;

  // Geometric continuation of the last two terms; the bound falls back to a
  // few multiples of the last term when the ratio is not a contraction.
  const auto tail_of = [](double last, double before_last, double& tail,
                          double& bound) {
    tail = 0.0;
    bound = 0.0;
    if (before_last == 0.0) return;
    const double ratio = last / before_last;
    if (ratio > 0.0 && ratio < 1.0) {
      tail = last * ratio / (1.0 - ratio);
      bound = std::abs(tail);
    } else {
      bound = 3.0 * std::abs(last);
    }
  };

  int small_in_a_row = 0;
  double last = first.value, before_last = 0.0;
  double tail = 0.0, tail_bound = 0.0;
  bool stopped = false;
  for (long n = 1; n <= spec.max_terms; ++n) {
    const QuadResult t = term(step * static_cast<double>(n));
    sum += t.value;
    abs_sum += std::abs(t.value);
    err += t.error;
    evaluations += t.evaluations;
    converged = converged && t.converged;
    before_last = last;
    last = t.value;
    const double threshold = std::max(spec.abs_floor, spec.rel_tol * std::abs(sum));
    small_in_a_row = std::abs(t.value) <= threshold ? small_in_a_row + 1 : 0;
    if (small_in_a_row >= 3) {
      tail_of(last, before_last, tail, tail_bound);
      if (tail_bound <= threshold) {
        stopped = true;
        break;
      }
    }
  }
  if (!stopped) {
    converged = false;
    tail_of(last, before_last, tail, tail_bound);
  }
  sum += tail;

  QuadResult r;
  r.value = 2.0 * kT * sum;
  r.abs_integral = 2.0 * kT * (abs_sum + std::abs(tail));
  r.error = 2.0 * kT * (err + tail_bound);
  r.evaluations = evaluations;
  r.converged =
      converged && 2.0 * kT * tail_bound <=
                       std::max(spec.abs_floor, spec.rel_tol * std::abs(r.value));
  return r;
}

QuadResult matsubara_sum(const Integrand& term, double kT,
                         const MatsubaraSpec& spec) {
  return matsubara_sum(
      [&term](double xi) {
        QuadResult r;
        r.value = term(xi);
        r.abs_integral = std::abs(r.value);
        r.evaluations = 1;
        return r;
      },
      kT, spec);
}

}  // namespace dispersion
