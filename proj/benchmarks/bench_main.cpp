#include <benchmark/benchmark.h>

#include <cmath>

#include <dispersion/casimir.hpp>
#include <dispersion/cp.hpp>
#include <dispersion/dynamics.hpp>
#include <dispersion/planar_greens.hpp>
#include <dispersion/vdw.hpp>

using namespace dispersion;

namespace {

DrudeLorentz dielectric() {
  DrudeLorentz m;
  m.permittivity = {0.75, 1.03, 0.001};
  return m;
}

PlanarScenario plates(MaterialModel m, double d) {
  PlanarScenario s;
  s.left = LayerStack::half_space(m);
  s.right = LayerStack::half_space(std::move(m));
  s.width = d;
  return s;
}

const Polarizability kAtom(TwoLevelResponse{1.0, 1.0});

void BM_Reflection(benchmark::State& state) {
  std::vector<Layer> layers;
  for (int i = 0; i < state.range(0); ++i) layers.push_back({0.1, dielectric()});
  layers.push_back({kSemiInfinite, ConstantStatic{3.0, 1.0}});
  const LayerStack stack(std::move(layers));
  double q = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(reflections(stack, Vacuum{}, 0.7, q));
    q += 1e-9;
  }
}
BENCHMARK(BM_Reflection)->Arg(0)->Arg(4)->Arg(32);

void BM_IdealMirrorPressure(benchmark::State& state) {
  const auto s = plates(PerfectConductor{}, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(casimir_pressure(s));
}
BENCHMARK(BM_IdealMirrorPressure)->Unit(benchmark::kMillisecond);

void BM_DielectricPressure(benchmark::State& state) {
  const auto s = plates(dielectric(), 1.0);
  CasimirOptions o;
  o.rel_tol = std::pow(10.0, -static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(casimir_pressure(s, ZeroT{}, o));
}
BENCHMARK(BM_DielectricPressure)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_MatsubaraPressure(benchmark::State& state) {
  const auto s = plates(dielectric(), 1.0);
  const double kT = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(casimir_pressure(s, FiniteT{kT}));
}
BENCHMARK(BM_MatsubaraPressure)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_CpHalfSpace(benchmark::State& state) {
  DrudeLorentz m = dielectric();
  m.permeability = DrudeLorentzParams::from_static(5.0, 1.0, 0.001);
  const AtomScenario s{kAtom, HalfSpaceGeometry{LayerStack::half_space(m)}, 0.5};
  for (auto _ : state) benchmark::DoNotOptimize(cp_potential(s));
}
BENCHMARK(BM_CpHalfSpace)->Unit(benchmark::kMillisecond);

void BM_CpCavityForce(benchmark::State& state) {
  const AtomScenario s{kAtom,
                       CavityGeometry{LayerStack::half_space(dielectric()),
                                      LayerStack::half_space(PerfectConductor{}), 5.0},
                       2.0};
  for (auto _ : state) benchmark::DoNotOptimize(cp_force(s));
}
BENCHMARK(BM_CpCavityForce)->Unit(benchmark::kMillisecond);

void BM_NAtom(benchmark::State& state) {
  std::vector<Eigen::Vector3d> pos;
  std::vector<Polarizability> atoms;
  for (int i = 0; i < state.range(0); ++i) {
    pos.emplace_back(i, 0.3 * (i % 3), 0.1 * i * i);
    atoms.push_back(kAtom);
  }
  for (auto _ : state) benchmark::DoNotOptimize(n_atom_potential(pos, atoms));
}
BENCHMARK(BM_NAtom)->Arg(2)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_ResonantForce(benchmark::State& state) {
  DrudeLorentz m;
  m.permittivity = {0.75, 1.0, 0.01};
  const TwoLevelNearHalfSpace sys{1.1, 9.42477796076938e-07, m, 0.0471238898038469};
  for (auto _ : state) benchmark::DoNotOptimize(resonant_force(sys));
}
BENCHMARK(BM_ResonantForce)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
