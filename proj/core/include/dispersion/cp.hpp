#pragma once

// Casimir-Polder potentials and forces on isotropic ground-state atoms in
// planar structures with a vacuum gap, ideal-mirror closed forms and the
// asymptotic limits.

#include <optional>
#include <variant>
#include <vector>

#include "dispersion/planar_greens.hpp"
#include "dispersion/quadrature.hpp"
#include "dispersion/response.hpp"

namespace dispersion {

enum class MirrorKind { Conductor, Permeable };

struct HalfSpaceGeometry {
  LayerStack stack = LayerStack::half_space(Vacuum{});
};
struct PlateGeometry {
  MaterialModel material = Vacuum{};
  double thickness = 1.0;
};
struct CavityGeometry {
  LayerStack left = LayerStack::half_space(Vacuum{});
  LayerStack right = LayerStack::half_space(Vacuum{});
  double width = 1.0;
};
struct IdealMirrorGeometry {
  MirrorKind kind = MirrorKind::Conductor;
};

using AtomGeometry = std::variant<HalfSpaceGeometry, PlateGeometry, CavityGeometry,
                                  IdealMirrorGeometry>;

struct AtomScenario {
  Polarizability atom;
  AtomGeometry geometry = HalfSpaceGeometry{};
  double position = 1.0;  // z_A, distance from the left wall

  void validate() const;
};

struct CpOptions {
  double rel_tol = 1e-8;
  double abs_floor = 0.0;
  // false replaces the cavity denominators D_sigma by 1 (no multiple
  // reflections between the walls).
  bool multiple_reflections = true;
};

struct CpResult {
  double value = 0.0;
  double error = 0.0;
  bool converged = true;
  long evaluations = 0;
  bool regime_warning = false;
};

// U(z_A); negative = attraction toward the nearer wall.
CpResult cp_potential(const AtomScenario& scenario, const CpOptions& options = {});
// -dU/dz_A, positive = pushed away from the left wall.
CpResult cp_force(const AtomScenario& scenario, const CpOptions& options = {});

// -(1/16 pi^2 z^3) \int dxi alpha e^{-2 xi z}(1 + 2 xi z + 2 xi^2 z^2), sign
// flipped for the permeable mirror.
CpResult cp_potential_perfect_mirror(const Polarizability& atom, double z,
                                     MirrorKind kind,
                                     const CpOptions& options = {});

// Dimensionless integral I(eps, mu) of the retarded half-space limit,
// U = -3 alpha0 I / (64 pi^2 z^4). I -> 2 for a perfect conductor.
double retarded_halfspace_integral(double eps, double mu, double rel_tol = 1e-12);
double cp_retarded_halfspace_asymptote(double alpha0, double eps, double mu,
                                       double z);

enum class NonretardedKind { Dielectric, Magnetic };

CpResult nonretarded_asymptote(const Polarizability& atom,
                               const MaterialModel& material, double z,
                               NonretardedKind kind, const CpOptions& options = {});

enum class ThinPlateForm { Full, Retarded, NonretardedDielectric, NonretardedMagnetic };

// Asymptotically thin plate of thickness d. regime_warning is set unless
// d < 0.1 z / n(0).
CpResult thin_plate_asymptote(const Polarizability& atom,
                              const MaterialModel& material, double z, double d,
                              ThinPlateForm form, const CpOptions& options = {});

struct BorderlinePoint {
  double eps = 1.0;
  std::optional<double> mu;  // empty: no sign change found
};

// For each static eps, the static mu at which the retarded half-space
// potential changes sign; repulsive above it.
std::vector<BorderlinePoint> repulsion_borderline(const std::vector<double>& eps_grid);

}  // namespace dispersion
