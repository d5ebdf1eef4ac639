#pragma once

// Free-space dispersion potentials between two or more atoms.

#include <Eigen/Core>
#include <functional>
#include <vector>

#include "dispersion/quadrature.hpp"
#include "dispersion/response.hpp"

namespace dispersion {

struct VdwOptions {
  double rel_tol = 1e-10;
  double abs_floor = 0.0;
};

// g(x) = 2 e^{-2x}(3 + 6x + 5x^2 + 2x^3 + x^4)
double pp_kernel(double x) noexcept;
// h(x) = 2 e^{-2x}(1 + 2x + x^2)
double pm_kernel(double x) noexcept;

// Two polarizable atoms: -(1/32 pi^3 r^6) \int dxi aA aB g(xi r).
QuadResult pp_potential(const Polarizability& a, const Polarizability& b, double r,
                        const VdwOptions& options = {});
// Polarizable A, magnetizable B: +(1/32 pi^3 r^4) \int dxi xi^2 aA bB h(xi r).
QuadResult pm_potential(const Polarizability& a, const Magnetizability& b, double r,
                        const VdwOptions& options = {});

double pp_retarded(double alpha_a0, double alpha_b0, double r);
QuadResult pp_nonretarded(const Polarizability& a, const Polarizability& b, double r,
                          const VdwOptions& options = {});
double pm_retarded(double alpha_a0, double beta_b0, double r);
QuadResult pm_nonretarded(const Polarizability& a, const Magnetizability& b, double r,
                          const VdwOptions& options = {});

// N-atom potential in free space, N in [2, 6], symmetrized over all
// permutations.
QuadResult n_atom_potential(const std::vector<Eigen::Vector3d>& positions,
                            const std::vector<Polarizability>& responses,
                            const VdwOptions& options = {});

// Pressure between two half spaces separated by d obtained by summing the
// two-atom potential over the atoms. The responses are per unit number
// density (chi / eta), so for a constant susceptibility chi they are static
// with value chi.
QuadResult pairwise_halfspace_pressure(const Polarizability& a,
                                       const Polarizability& b, double d,
                                       const VdwOptions& options = {});

struct PowerLawFit {
  double exponent = 0.0;
  double prefactor = 0.0;  // |U| ~ prefactor r^exponent
  double sign = 1.0;
  double max_residual = 0.0;  // largest |log residual|
};

// Least-squares slope of log|U| against log r over n log-spaced points.
// Throws DomainError when U changes sign in the window.
PowerLawFit power_law_fit(const std::function<double(double)>& potential, double r_lo,
                          double r_hi, int n_points);

}  // namespace dispersion
