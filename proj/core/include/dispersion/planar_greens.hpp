#pragma once

// Imaginary-frequency propagation constants, multilayer reflection
// coefficients and the kernels of the free-space and planar scattering Green
// tensors.

#include <Eigen/Core>
#include <limits>
#include <vector>

#include "dispersion/material.hpp"

namespace dispersion {

inline constexpr double kSemiInfinite = std::numeric_limits<double>::infinity();

struct Layer {
  double thickness = kSemiInfinite;
  MaterialModel material = Vacuum{};

  bool semi_infinite() const noexcept { return thickness == kSemiInfinite; }
};

// Layers ordered from the one touching the interspace outward. The last layer
// is semi-infinite. Ideal markers may only appear as the single layer of a
// one-layer stack.
class LayerStack {
 public:
  explicit LayerStack(std::vector<Layer> layers);

  static LayerStack half_space(MaterialModel material);
  // Finite slab of `thickness` backed by `backing` (vacuum by default).
  static LayerStack slab(MaterialModel material, double thickness,
                         MaterialModel backing = Vacuum{});

  const std::vector<Layer>& layers() const noexcept { return layers_; }
  bool ideal() const noexcept;
  // Stack whose every layer is vacuum: reflects nothing.
  bool transparent() const noexcept;

 private:
  std::vector<Layer> layers_;
};

struct PlanarScenario {
  LayerStack left = LayerStack::half_space(Vacuum{});
  LayerStack right = LayerStack::half_space(Vacuum{});
  MaterialModel interspace = Vacuum{};
  double width = 1.0;

  // Throws DomainError / InvalidStack on an inconsistent scenario.
  void validate() const;
};

enum class Polarization { s, p };

struct Reflections {
  double s = 0.0;
  double p = 0.0;

  double operator[](Polarization pol) const noexcept {
    return pol == Polarization::s ? s : p;
  }
};

// sqrt(eps mu xi^2 + q^2).
double propagation_b(double xi, double q, double eps, double mu);

// Response of one stack frozen at a given xi, so the inner q (or b) loop only
// pays for square roots, exponentials and the recurrence.
class StackResponse {
 public:
  StackResponse(const LayerStack& stack, const MaterialModel& ambient, double xi,
                ZeroFrequencyPrescription prescription =
                    ZeroFrequencyPrescription::Drude);

  // Reflection coefficients seen from the ambient medium at transverse
  // wavenumber^2 q2.
  Reflections at(double q2) const;

 private:
  struct Slice {
    double n2xi2 = 0.0;  // eps mu xi^2
    double eps = 1.0;
    double mu = 1.0;
    double thickness = kSemiInfinite;
  };
  enum class Kind { Layered, Conductor, Permeable, Transparent };
  Kind kind_ = Kind::Layered;
  std::vector<Slice> slices_;  // slices_[0] is the ambient medium
};

double reflection(const LayerStack& stack, const MaterialModel& ambient,
                  double xi, double q, Polarization pol,
                  ZeroFrequencyPrescription prescription =
                      ZeroFrequencyPrescription::Drude);

Reflections reflections(const LayerStack& stack, const MaterialModel& ambient,
                        double xi, double q,
                        ZeroFrequencyPrescription prescription =
                            ZeroFrequencyPrescription::Drude);

// Free-space Green tensor at imaginary frequency for separation rho != 0,
// without the delta-function term:
//   G = e^{-x} / (4 pi xi^2 rho^3) [a(x) I - b(x) e e],  x = xi rho.
Eigen::Matrix3d free_space_green(const Eigen::Vector3d& rho, double xi);

// xi^2 G. Finite as xi -> 0, which is what the N-atom products need.
Eigen::Matrix3d scaled_free_space_green(const Eigen::Vector3d& rho, double xi);

// Integrand factor g(z, i xi, q) of the zz stress component, all four terms.
double cavity_kernel_g(const PlanarScenario& scenario, double z, double xi,
                       double q);

// (q/b) { e^{-2bz}[r_s-/D_s - (1 + 2q^2/xi^2) r_p-/D_p]
//        + e^{-2b(d-z)}[r_s+/D_s - (1 + 2q^2/xi^2) r_p+/D_p] }
// for an atom at z in a vacuum gap. Requires xi > 0.
double cp_kernel(const PlanarScenario& scenario, double z, double xi, double q);

// Cavity denominators D_sigma = 1 - r+ r- e^{-2bd}.
Reflections cavity_denominators(const Reflections& left, const Reflections& right,
                                double b, double width);

// exp(x) with arguments below -700 flushed to zero.
double decay(double exponent) noexcept;

}  // namespace dispersion
