#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <dispersion/cp.hpp>
#include <dispersion/error.hpp>

#include "oracles.hpp"

using namespace dispersion;

namespace {

const Polarizability kAtom(TwoLevelResponse{1.0, 1.0});
constexpr double kInfinity = std::numeric_limits<double>::infinity();

AtomScenario near(MaterialModel m, double z) {
  return {kAtom, HalfSpaceGeometry{LayerStack::half_space(std::move(m))}, z};
}

CpOptions tight() {
  CpOptions o;
  o.rel_tol = 1e-12;
  return o;
}

double five_point(const std::function<double(double)>& u, double z, double h) {
  return (-u(z + 2 * h) + 8 * u(z + h) - 8 * u(z - h) + u(z - 2 * h)) / (12 * h);
}

DrudeLorentz fig3_medium(double mu0) {
  DrudeLorentz m;
  m.permittivity = {0.75, 1.03, 0.001};
  if (mu0 > 1.0) m.permeability = DrudeLorentzParams::from_static(mu0, 1.0, 0.001);
  return m;
}

}  // namespace

TEST(CasimirPolder, PerfectConductorMatchesClosedForm) {
  for (double z : {0.05, 1.0, 20.0}) {
    const auto full = cp_potential(near(PerfectConductor{}, z), tight());
    const auto closed = cp_potential_perfect_mirror(kAtom, z, MirrorKind::Conductor, tight());
    EXPECT_NEAR(full.value / closed.value, 1.0, 1e-9) << z;
  }
}

TEST(CasimirPolder, PermeableMirrorFlipsSign) {
  const double c = cp_potential_perfect_mirror(kAtom, 2.0, MirrorKind::Conductor).value;
  const double p = cp_potential_perfect_mirror(kAtom, 2.0, MirrorKind::Permeable).value;
  EXPECT_LT(c, 0.0);
  EXPECT_DOUBLE_EQ(p, -c);
  const auto g = IdealMirrorGeometry{MirrorKind::Permeable};
  EXPECT_NEAR(cp_potential({kAtom, g, 2.0}).value / p, 1.0, 1e-8);
}

TEST(CasimirPolder, PerfectMirrorLimits) {
  // retarded -3 alpha0 / (32 pi^2 z^4); nonretarded -<d^2>/(48 pi z^3)
  const double z_far = 200.0, z_near = 1e-4;
  const double far = cp_potential_perfect_mirror(kAtom, z_far, MirrorKind::Conductor, tight()).value;
  EXPECT_NEAR(far / (-3.0 / (32.0 * oracle::pi * oracle::pi * std::pow(z_far, 4))), 1.0, 1e-2);
  const double d2 = kAtom.dipole_squared();
  const double close = cp_potential_perfect_mirror(kAtom, z_near, MirrorKind::Conductor, tight()).value;
  EXPECT_NEAR(close / (-d2 / (48.0 * oracle::pi * std::pow(z_near, 3))), 1.0, 1e-3);
}

TEST(CasimirPolder, HalfSpaceMatchesWavenumberIntegral) {
  for (const MaterialModel& m :
       {MaterialModel{ConstantStatic{4.0, 1.0}}, MaterialModel{fig3_medium(5.0)}}) {
    for (double z : {0.1, 2.0}) {
      const double want = oracle::cp_single_wall(
          [](double xi) { return kAtom(xi); },
          [&](double xi, double q) {
            return oracle::transfer_matrix({}, {{epsilon_ixi(m, xi), mu_ixi(m, xi), 0.0}}, xi, q);
          },
          z);
      EXPECT_NEAR(cp_potential(near(m, z), tight()).value / want, 1.0, 1e-8) << z;
    }
  }
}

TEST(CasimirPolder, ForceIsGradient) {
  DrudeLorentz m = fig3_medium(5.0);
  const std::vector<AtomGeometry> geometries = {
      HalfSpaceGeometry{LayerStack::half_space(m)},
      PlateGeometry{m, 0.5},
      CavityGeometry{LayerStack::half_space(m), LayerStack::half_space(ConstantStatic{3.0, 1.0}), 4.0},
  };
  for (const auto& g : geometries) {
    for (double z : {0.3, 1.1, 2.7}) {
      const AtomScenario s{kAtom, g, z};
      const auto u = [&](double zz) {
        AtomScenario t = s;
        t.position = zz;
        return cp_potential(t, tight()).value;
      };
      const double fd = -five_point(u, z, 2.5e-3 * z);
      EXPECT_NEAR(cp_force(s, tight()).value / fd, 1.0, 1e-6) << z;
    }
  }
}

TEST(CasimirPolder, SymmetricCavityCentre) {
  const auto wall = LayerStack::half_space(ConstantStatic{3.0, 1.0});
  const AtomScenario mid{kAtom, CavityGeometry{wall, wall, 2.0}, 1.0};
  const auto f = cp_force(mid, tight());
  const auto off = cp_force({kAtom, CavityGeometry{wall, wall, 2.0}, 0.5}, tight());
  EXPECT_LT(std::abs(f.value), 1e-10 * std::abs(off.value));
  // Pulled toward the nearer (left) wall.
  EXPECT_LT(off.value, 0.0);
}

TEST(CasimirPolder, MultipleReflectionsSwitch) {
  const auto wall = LayerStack::half_space(PerfectConductor{});
  const AtomScenario s{kAtom, CavityGeometry{wall, wall, 1.0}, 0.3};
  CpOptions single = tight();
  single.multiple_reflections = false;
  const double with = cp_potential(s, tight()).value;
  const double without = cp_potential(s, single).value;
  EXPECT_NE(with, without);
  // Without the cavity denominators the walls add up independently.
  const double left = cp_potential(near(PerfectConductor{}, 0.3), tight()).value;
  const double right = cp_potential(near(PerfectConductor{}, 0.7), tight()).value;
  EXPECT_NEAR(without / (left + right), 1.0, 1e-9);
}

TEST(CasimirPolder, RetardedHalfSpaceIntegral) {
  EXPECT_EQ(retarded_halfspace_integral(kInfinity, 1.0), 2.0);
  EXPECT_EQ(retarded_halfspace_integral(1.0, kInfinity), -2.0);
  EXPECT_NEAR(retarded_halfspace_integral(1.0, 1.0), 0.0, 1e-15);
  EXPECT_NEAR(retarded_halfspace_integral(1e9, 1.0), 2.0, 1e-3);
  EXPECT_GT(retarded_halfspace_integral(4.0, 1.0), 0.0);
  EXPECT_THROW(retarded_halfspace_integral(0.5, 1.0), DomainError);
  // Matches the full potential far away.
  const double z = 400.0;
  const auto m = ConstantStatic{4.0, 2.0};
  EXPECT_NEAR(cp_potential(near(m, z), tight()).value /
                  cp_retarded_halfspace_asymptote(1.0, 4.0, 2.0, z),
              1.0, 1e-2);
}

TEST(CasimirPolder, NonretardedDielectricLimit) {
  // -1/(16 pi^2 z^3) \int alpha (eps-1)/(eps+1) for a constant eps
  const double z = 1e-4;
  const auto r = nonretarded_asymptote(kAtom, ConstantStatic{3.0, 1.0}, z, NonretardedKind::Dielectric);
  const double want = -(oracle::pi / 2.0) * 0.5 / (16.0 * oracle::pi * oracle::pi * z * z * z);
  EXPECT_NEAR(r.value / want, 1.0, 1e-9);
  EXPECT_NEAR(cp_potential(near(ConstantStatic{3.0, 1.0}, z), tight()).value / want, 1.0, 1e-3);
}

TEST(CasimirPolder, NonretardedMagneticLimitIsRepulsive) {
  DrudeLorentz m;
  m.permeability = DrudeLorentzParams::from_static(5.0, 1.0, 0.001);
  const double z = 1e-5;
  const auto asym = nonretarded_asymptote(kAtom, m, z, NonretardedKind::Magnetic, tight());
  const double want = oracle::semi_infinite([&](double xi) {
                        const double mu = mu_ixi(m, xi);
                        return xi * xi * kAtom(xi) * (mu - 1.0) * (mu + 3.0) / (mu + 1.0);
                      }) /
                      (32.0 * oracle::pi * oracle::pi * z);
  EXPECT_NEAR(asym.value / want, 1.0, 1e-8);
  EXPECT_GT(asym.value, 0.0);
  EXPECT_NEAR(cp_potential(near(m, z), tight()).value / want, 1.0, 1e-3);
}

TEST(CasimirPolder, ThinPlate) {
  const ConstantStatic glass{3.0, 1.0};
  const double z = 50.0, d = 0.05;
  const auto full = cp_potential({kAtom, PlateGeometry{glass, d}, z}, tight());
  const auto thin = thin_plate_asymptote(kAtom, glass, z, d, ThinPlateForm::Full, tight());
  EXPECT_FALSE(thin.regime_warning);
  EXPECT_NEAR(thin.value / full.value, 1.0, 0.05);
  const auto wide = thin_plate_asymptote(kAtom, glass, 1.0, 0.5, ThinPlateForm::Full);
  EXPECT_TRUE(wide.regime_warning);
}

TEST(CasimirPolder, Borderline) {
  const auto pts = repulsion_borderline({1.0, 1.0001, 2.0, 1e4});
  ASSERT_EQ(pts.size(), 4u);
  EXPECT_DOUBLE_EQ(*pts[0].mu, 1.0);
  EXPECT_NEAR((*pts[1].mu - 1.0) / 1e-4, 3.29, 0.02 * 3.29);
  EXPECT_GT(*pts[2].mu, 2.0);
  EXPECT_NEAR(*pts[3].mu / 1e4, 5.11, 0.02 * 5.11);
  // On the borderline the retarded integral vanishes.
  EXPECT_NEAR(retarded_halfspace_integral(2.0, *pts[2].mu), 0.0, 1e-10);
}

TEST(CasimirPolder, Validation) {
  EXPECT_THROW(cp_potential(near(ConstantStatic{2.0, 1.0}, -1.0)), DomainError);
  const auto wall = LayerStack::half_space(ConstantStatic{2.0, 1.0});
  EXPECT_THROW(cp_potential({kAtom, CavityGeometry{wall, wall, 1.0}, 1.5}), DomainError);
  EXPECT_THROW(cp_potential({kAtom, PlateGeometry{PerfectConductor{}, 1.0}, 1.0}), InvalidStack);
  EXPECT_THROW(cp_potential({kAtom, PlateGeometry{ConstantStatic{2.0, 1.0}, 0.0}, 1.0}), DomainError);
  EXPECT_EQ(cp_potential({Polarizability{}, HalfSpaceGeometry{wall}, 1.0}).value, 0.0);
}
