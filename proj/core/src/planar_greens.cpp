#include "dispersion/planar_greens.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "dispersion/error.hpp"

namespace dispersion {
namespace {

constexpr double kPi = std::numbers::pi;

// Interface coefficient (y0 - y1) / (y0 + y1) for admittances y = b / a,
// a = eps or mu, with b^2 = N + q^2. The numerator is expanded so that
// nearly index-matched media at large q do not lose it to cancellation.
double interface(double b0, double b1, double a0, double a1, double n0, double n1,
                 double q2) {
  if (!std::isfinite(a0) || !std::isfinite(a1)) {
    const double y0 = std::isfinite(a0) ? b0 / a0 : 0.0;
    const double y1 = std::isfinite(a1) ? b1 / a1 : 0.0;
    const double sum = y0 + y1;
    return sum == 0.0 ? 0.0 : (y0 - y1) / sum;
  }
  const double den = a1 * b0 + a0 * b1;
  if (den == 0.0) return 0.0;
  const double num = (a1 - a0) * (a1 + a0) * q2 + (a1 * a1 * n0 - a0 * a0 * n1);
  return num / (den * den);
}

}  // namespace

double decay(double exponent) noexcept {
  return exponent < -700.0 ? 0.0 : std::exp(exponent);
}

LayerStack::LayerStack(std::vector<Layer> layers) : layers_(std::move(layers)) {
  if (layers_.empty()) throw InvalidStack("layer stack is empty");
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    const Layer& l = layers_[i];
    const bool last = i + 1 == layers_.size();
    if (last && !l.semi_infinite())
      throw InvalidStack("terminal layer must be semi-infinite");
    if (!last && !(l.thickness > 0.0 && std::isfinite(l.thickness)))
      throw InvalidStack("layer " + std::to_string(i) +
                         " must have a finite positive thickness");
    if (is_ideal(l.material) && layers_.size() != 1)
      throw InvalidStack("ideal-limit marker is only allowed as a single-layer stack");
  }
}

LayerStack LayerStack::half_space(MaterialModel material) {
  return LayerStack({Layer{kSemiInfinite, std::move(material)}});
}

LayerStack LayerStack::slab(MaterialModel material, double thickness,
                            MaterialModel backing) {
  return LayerStack({Layer{thickness, std::move(material)},
                     Layer{kSemiInfinite, std::move(backing)}});
}

bool LayerStack::ideal() const noexcept {
  return layers_.size() == 1 && is_ideal(layers_.front().material);
}

bool LayerStack::transparent() const noexcept {
  for (const auto& l : layers_)
    if (!std::holds_alternative<Vacuum>(l.material)) return false;
  return true;
}

void PlanarScenario::validate() const {
  if (!(width > 0.0) || !std::isfinite(width))
    throw DomainError("interspace width must be positive and finite");
  if (is_ideal(interspace))
    throw UnsupportedModel("interspace medium cannot be an ideal-limit marker");
}

double propagation_b(double xi, double q, double eps, double mu) {
  if (xi < 0.0 || q < 0.0)
    throw DomainError("propagation_b: xi and q must be non-negative");
  if (xi == 0.0 && q == 0.0)
    throw DegeneratePoint("propagation_b: xi = q = 0 is a degenerate point");
  return std::sqrt(eps * mu * xi * xi + q * q);
}

StackResponse::StackResponse(const LayerStack& stack, const MaterialModel& ambient,
                             double xi, ZeroFrequencyPrescription prescription) {
  if (stack.ideal()) {
    kind_ = std::holds_alternative<PerfectConductor>(stack.layers().front().material)
                ? Kind::Conductor
                : Kind::Permeable;
    return;
  }
  if (stack.transparent() && std::holds_alternative<Vacuum>(ambient)) {
    kind_ = Kind::Transparent;
    return;
  }
  const auto slice = [&](const MaterialModel& m, double thickness) {
    const double mu = mu_ixi(m, xi);
    const double eps = epsilon_ixi(m, xi);
    Slice s;
    s.n2xi2 = epsilon_xi2(m, xi, prescription) * mu;
    s.eps = eps;
    s.mu = mu;
    s.thickness = thickness;
    return s;
  };
  slices_.reserve(stack.layers().size() + 1);
  slices_.push_back(slice(ambient, kSemiInfinite));
  for (const auto& l : stack.layers()) slices_.push_back(slice(l.material, l.thickness));
}

Reflections StackResponse::at(double q2) const {
  switch (kind_) {
    case Kind::Conductor:
      return {-1.0, 1.0};
    case Kind::Permeable:
      return {1.0, -1.0};
    case Kind::Transparent:
      return {0.0, 0.0};
    case Kind::Layered:
      break;
  }
  // Backward recurrence from the terminal half space (r = 0 beyond it).
  const std::size_t last = slices_.size() - 1;
  double rs = 0.0, rp = 0.0;
  double b_next = std::sqrt(slices_[last].n2xi2 + q2);
  for (std::size_t j = last; j-- > 0;) {
    const Slice& here = slices_[j];
    const Slice& next = slices_[j + 1];
    const double b_here = std::sqrt(here.n2xi2 + q2);
    if (b_here == 0.0 && b_next == 0.0)
      throw DegeneratePoint("reflection: xi = q = 0 is a degenerate point");
    const double cs =
        interface(b_here, b_next, here.mu, next.mu, here.n2xi2, next.n2xi2, q2);
    const double cp =
        interface(b_here, b_next, here.eps, next.eps, here.n2xi2, next.n2xi2, q2);
    const double e = next.thickness == kSemiInfinite
                         ? 0.0
                         : decay(-2.0 * b_next * next.thickness);
    const double ers = e * rs;
    const double erp = e * rp;
    rs = (cs + ers) / (1.0 + cs * ers);
    rp = (cp + erp) / (1.0 + cp * erp);
    b_next = b_here;
  }
  return {rs, rp};
}

Reflections reflections(const LayerStack& stack, const MaterialModel& ambient,
                        double xi, double q, ZeroFrequencyPrescription prescription) {
  if (xi < 0.0 || q < 0.0)
    throw DomainError("reflection: xi and q must be non-negative");
  if (xi == 0.0 && q == 0.0)
    throw DegeneratePoint("reflection: xi = q = 0 is a degenerate point");
  return StackResponse(stack, ambient, xi, prescription).at(q * q);
}

double reflection(const LayerStack& stack, const MaterialModel& ambient, double xi,
                  double q, Polarization pol, ZeroFrequencyPrescription prescription) {
  return reflections(stack, ambient, xi, q, prescription)[pol];
}

Eigen::Matrix3d scaled_free_space_green(const Eigen::Vector3d& rho, double xi) {
  const double r = rho.norm();
  if (!(r > 0.0))
    throw DegeneratePoint("free-space Green tensor: coincident points (rho = 0)");
  if (xi < 0.0) throw DomainError("free-space Green tensor: xi must be >= 0");
  const double x = xi * r;
  const double a = 1.0 + x + x * x;
  const double b = 3.0 + 3.0 * x + x * x;
  const Eigen::Vector3d e = rho / r;
  const double pre = std::exp(-x) / (4.0 * kPi * r * r * r);
  return pre * (a * Eigen::Matrix3d::Identity() - b * e * e.transpose());
}

Eigen::Matrix3d free_space_green(const Eigen::Vector3d& rho, double xi) {
  if (!(xi > 0.0)) throw DomainError("free-space Green tensor: xi must be > 0");
  return scaled_free_space_green(rho, xi) / (xi * xi);
}

Reflections cavity_denominators(const Reflections& left, const Reflections& right,
                                double b, double width) {
  const double e = decay(-2.0 * b * width);
  Reflections d{1.0 - left.s * right.s * e, 1.0 - left.p * right.p * e};
  if (!(d.s > 0.0) || !(d.p > 0.0))
    throw DomainError("cavity denominator D_sigma <= 0: unphysical reflection data");
  return d;
}

double cavity_kernel_g(const PlanarScenario& scenario, double z, double xi,
                       double q) {
  scenario.validate();
  const double d = scenario.width;
  if (!(z > 0.0 && z < d)) throw DomainError("cavity_kernel_g: z must lie in (0, d)");
  const double eps = epsilon_ixi(scenario.interspace, xi);
  const double mu = mu_ixi(scenario.interspace, xi);
  const double b = propagation_b(xi, q, eps, mu);
  const double inv_n2 = 1.0 / (eps * mu);
  const Reflections rm = reflections(scenario.left, scenario.interspace, xi, q);
  const Reflections rp = reflections(scenario.right, scenario.interspace, xi, q);
  const Reflections D = cavity_denominators(rm, rp, b, d);
  const double e2d = decay(-2.0 * b * d);
  const double b2 = b * b, q2 = q * q;
  const double plus = 1.0 + inv_n2, minus = 1.0 - inv_n2;
  const double ez = decay(-2.0 * b * z), edz = decay(-2.0 * b * (d - z));

  double g = -2.0 * (b2 * plus + q2 * minus) * e2d * rp.s * rm.s / D.s;
  g += -2.0 * (b2 * plus - q2 * minus) * e2d * rp.p * rm.p / D.p;
  g += (b2 - q2) * minus * (ez * rm.s + edz * rp.s) / D.s;
  g -= (b2 - q2) * minus * (ez * rm.p + edz * rp.p) / D.p;
  return g;
}

double cp_kernel(const PlanarScenario& scenario, double z, double xi, double q) {
  scenario.validate();
  if (!std::holds_alternative<Vacuum>(scenario.interspace))
    throw DomainError("cp_kernel: the interspace must be vacuum");
  const double d = scenario.width;
  if (!(z > 0.0 && z < d)) throw DomainError("cp_kernel: z must lie in (0, d)");
  if (!(xi > 0.0)) throw DomainError("cp_kernel: xi must be > 0");
  const double b = propagation_b(xi, q, 1.0, 1.0);
  const Reflections rm = reflections(scenario.left, Vacuum{}, xi, q);
  const Reflections rp = reflections(scenario.right, Vacuum{}, xi, q);
  const Reflections D = cavity_denominators(rm, rp, b, d);
  const double pfac = 1.0 + 2.0 * q * q / (xi * xi);
  const double left = decay(-2.0 * b * z) * (rm.s / D.s - pfac * rm.p / D.p);
  const double right = decay(-2.0 * b * (d - z)) * (rp.s / D.s - pfac * rp.p / D.p);
  return q / b * (left + right);
}

}  // namespace dispersion
