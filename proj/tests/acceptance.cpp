// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <dispersion/casimir.hpp>
#include <dispersion/cp.hpp>
#include <dispersion/dynamics.hpp>
#include <dispersion/vdw.hpp>

using namespace dispersion;

namespace {

constexpr double pi = std::numbers::pi;
constexpr double kMirror = pi * pi / 240.0;

int failures = 0;

void report(int id, const char* name, bool ok, const std::string& detail) {
  if (!ok) ++failures;
  std::printf("%s %2d  %-34s %s\n", ok ? "PASS" : "FAIL", id, name, detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double rel(double a, double b) { return std::abs(a / b - 1.0); }

PlanarScenario cavity(MaterialModel left, MaterialModel right, double d,
                      MaterialModel gap = Vacuum{}) {
  PlanarScenario s;
  s.left = LayerStack::half_space(std::move(left));
  s.right = LayerStack::half_space(std::move(right));
  s.interspace = std::move(gap);
  s.width = d;
  return s;
}

// Barrier medium: plasma 0.75, resonance 1.03, damping 0.001 (units of omega_10).
DrudeLorentz barrier_medium(double mu0) {
  DrudeLorentz m;
  m.permittivity = {0.75, 1.03, 0.001};
  if (mu0 > 1.0) m.permeability = DrudeLorentzParams::from_static(mu0, 1.0, 0.001);
  return m;
}

DrudeLorentz magnetic_only(double mu0) {
  DrudeLorentz m;
  m.permittivity = {0.0, 1.0, 0.0};
  m.permeability = DrudeLorentzParams::from_static(mu0, 1.0, 0.001);
  return m;
}

const Polarizability kAtom(TwoLevelResponse{1.0, 1.0});

double five_point(const std::function<double(double)>& u, double z, double h) {
  return (-u(z + 2 * h) + 8 * u(z + h) - 8 * u(z - h) + u(z - 2 * h)) / (12 * h);
}

void c1() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto p = casimir_pressure(cavity(PerfectConductor{}, PerfectConductor{}, 1.0));
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const double e = rel(p.value, kMirror);
  report(1, "ideal-mirror pressure", e < 1e-6 && dt < 1.0,
         fmt("P=%.12g ref=%.12g rel=%.1e time=%.3fs", p.value, kMirror, e, dt));
}

void c2() {
  const double eps = 2.0, mu = 1.0;
  const auto p = casimir_pressure(
      cavity(PerfectConductor{}, PerfectConductor{}, 1.0, ConstantStatic{eps, mu}));
  const double want = kMirror * std::sqrt(mu / eps) * (2.0 / 3.0 + 1.0 / (3.0 * eps * mu));
  const double e = rel(p.value, want);
  report(2, "medium-filled ideal cavity", e < 1e-6,
         fmt("P=%.12g closed=%.12g rel=%.1e", p.value, want, e));
}

void c3() {
  const double dl = 1.3, dr = 0.8;
  bool ok = true;
  std::string detail;
  for (double eps : {1.0, 2.0, 4.0}) {
    const auto gap = ConstantStatic{eps, 1.0};
    const double lorentz =
        casimir_pressure(cavity(PerfectConductor{}, PerfectConductor{}, dr, gap)).value -
        casimir_pressure(cavity(PerfectConductor{}, PerfectConductor{}, dl, gap)).value;
    const double minkowski = kMirror / std::sqrt(eps) * (std::pow(dr, -4) - std::pow(dl, -4));
    const double ratio = std::abs(lorentz) / std::abs(minkowski);
    const bool equal = std::abs(ratio - 1.0) < 1e-7;
    ok = ok && ratio <= 1.0 + 1e-7 && (eps == 1.0 ? equal : !equal);
    detail += fmt("eps=%g |F|/|F_M|=%.9f ", eps, ratio);
  }
  report(3, "Lorentz vs Minkowski plate force", ok, detail);
}

void c4() {
  CpOptions o;
  o.rel_tol = 1e-10;
  const double zf = 50.0, zn = 1e-3;
  const double far = cp_potential({kAtom, IdealMirrorGeometry{}, zf}, o).value;
  const double near = cp_potential({kAtom, IdealMirrorGeometry{}, zn}, o).value;
  const double ret = -3.0 * kAtom.static_value() / (32.0 * pi * pi * std::pow(zf, 4));
  const double nr = -kAtom.dipole_squared() / (48.0 * pi * std::pow(zn, 3));
  const double ef = rel(far, ret), en = rel(near, nr);
  report(4, "CP ideal-mirror asymptotes", ef < 1e-2 && en < 1e-2,
         fmt("retarded dev=%.2e (z=%g) nonretarded dev=%.2e (z=%g)", ef, zf, en, zn));
}

// Retarded and nonretarded windows shared with the power-law fits.
constexpr double kFarLo = 100.0, kFarHi = 1000.0;
constexpr double kNearLo = 1e-4, kNearHi = 1e-3;

void c5() {
  CpOptions o;
  o.rel_tol = 1e-10;
  double worst_ret = 0.0, worst_d = 0.0, worst_m = 0.0;
  const auto u = [&](const MaterialModel& m, double z) {
    return cp_potential({kAtom, HalfSpaceGeometry{LayerStack::half_space(m)}, z}, o).value;
  };
  for (const MaterialModel& m : {MaterialModel{barrier_medium(1.0)}, MaterialModel{barrier_medium(5.0)}})
    for (double z : {kFarLo, kFarHi})
      worst_ret = std::max(worst_ret, rel(u(m, z), cp_retarded_halfspace_asymptote(
                                                       1.0, static_epsilon(m), static_mu(m), z)));
  const MaterialModel diel = barrier_medium(1.0), magn = magnetic_only(5.0);
  for (double z : {kNearLo, kNearHi}) {
    worst_d = std::max(worst_d, rel(u(diel, z), nonretarded_asymptote(
                                                    kAtom, diel, z, NonretardedKind::Dielectric, o).value));
    worst_m = std::max(worst_m, rel(u(magn, z), nonretarded_asymptote(
                                                    kAtom, magn, z, NonretardedKind::Magnetic, o).value));
  }
  report(5, "half-space asymptotes", worst_ret < 1e-2 && worst_d < 1e-2 && worst_m < 1e-2,
         fmt("retarded %.2e dielectric %.2e magnetic %.2e (worst over window edges)",
             worst_ret, worst_d, worst_m));
}

void c6() {
  const double weak = 1e-4, strong = 1e4;
  const auto b = repulsion_borderline({1.0 + weak, strong});
  const bool found = b[0].mu && b[1].mu;
  const double slope = found ? (*b[0].mu - 1.0) / weak : 0.0;
  const double ratio = found ? *b[1].mu / strong : 0.0;
  report(6, "repulsion borderline", found && rel(slope, 3.29) < 0.02 && rel(ratio, 5.11) < 0.02,
         fmt("slope=%.4f ratio=%.4f", slope, ratio));
}

void c7() {
  CpOptions o;
  o.rel_tol = 1e-10;
  const int n = 60;
  std::vector<double> z(n);
  for (int i = 0; i < n; ++i) z[i] = 0.01 * std::pow(1000.0, i / double(n - 1));
  const auto curve = [&](double mu0) {
    std::vector<double> u(n);
    for (int i = 0; i < n; ++i)
      u[i] = cp_potential({kAtom, HalfSpaceGeometry{LayerStack::half_space(barrier_medium(mu0))}, z[i]}, o)
                 .value;
    return u;
  };
  const auto u5 = curve(5.0);
  const auto top = std::max_element(u5.begin(), u5.end());
  const bool barrier = *top > 0.0 && top != u5.begin() && top != u5.end() - 1;
  const auto u1 = curve(1.0);
  bool plain = true;
  for (int i = 0; i < n; ++i) plain = plain && u1[i] < 0.0 && (i == 0 || u1[i] > u1[i - 1]);
  report(7, "barrier for mu(0)=5", barrier && plain,
         fmt("max U=%.4e at z=%.4g; mu(0)=1 negative and monotone: %s", *top,
             z[top - u5.begin()], plain ? "yes" : "no"));
}

void c8() {
  const double r = 1e3;
  const Magnetizability beta(TwoLevelResponse{1.0, 1.0});
  const double cpp = pp_potential(kAtom, kAtom, r).value * std::pow(r, 7);
  const double cpm = pm_potential(kAtom, beta, r).value * std::pow(r, 7);
  const double wpp = -23.0 / (64.0 * pi * pi * pi), wpm = 7.0 / (64.0 * pi * pi * pi);
  const double ratio = std::abs(cpm / cpp);
  report(8, "two-atom retarded coefficients",
         rel(cpp, wpp) < 5e-3 && rel(cpm, wpm) < 5e-3 && rel(ratio, 7.0 / 23.0) < 1e-2,
         fmt("pp dev=%.2e pm dev=%.2e ratio=%.6f", rel(cpp, wpp), rel(cpm, wpm), ratio));
}

void c9() {
  const Magnetizability beta(TwoLevelResponse{1.0, 1.0});
  const DrudeLorentz diel = barrier_medium(1.0), magn = magnetic_only(5.0);
  CpOptions co;
  co.rel_tol = 1e-10;
  CasimirOptions po;
  po.rel_tol = 1e-10;
  VdwOptions vo;
  vo.rel_tol = 1e-12;
  struct Case {
    const char* label;
    std::function<double(double)> f;
    double exponent_far, exponent_near;
  };
  const auto cp = [&](const MaterialModel& m) {
    return [&, m](double z) {
      return cp_potential({kAtom, HalfSpaceGeometry{LayerStack::half_space(m)}, z}, co).value;
    };
  };
  const auto pressure = [&](const MaterialModel& l, const MaterialModel& r) {
    return [&, l, r](double d) { return casimir_pressure(cavity(l, r, d), ZeroT{}, po).value; };
  };
  // Atom pairs and atom-wall fit potentials (force exponent + 1), walls the pressure.
  const std::vector<Case> cases = {
      {"atoms-pp", [&](double r) { return pp_potential(kAtom, kAtom, r, vo).value; }, -7, -6},
      {"atoms-pm", [&](double r) { return pm_potential(kAtom, beta, r, vo).value; }, -7, -4},
      {"atom-wall-pp", cp(diel), -4, -3},
      {"atom-wall-pm", cp(magn), -4, -1},
      {"walls-pp", pressure(diel, diel), -4, -3},
      {"walls-pm", pressure(diel, magn), -4, -1},
  };
  double worst = 0.0;
  std::string detail;
  for (const auto& c : cases) {
    const double far = power_law_fit(c.f, kFarLo, kFarHi, 9).exponent;
    const double near = power_law_fit(c.f, kNearLo, kNearHi, 9).exponent;
    worst = std::max({worst, std::abs(far - c.exponent_far), std::abs(near - c.exponent_near)});
    detail += fmt("%s %.3f/%.3f ", c.label, far, near);
  }
  report(9, "power laws (atoms, atom-wall, walls)", worst <= 0.05,
         fmt("worst |dev|=%.3f; ", worst) + detail);
}

void c10() {
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  VdwOptions o;
  o.rel_tol = 1e-13;
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    const Polarizability a(TwoLevelResponse{0.2 + 3.0 * u(rng), 0.1 + 5.0 * u(rng)});
    const Polarizability b(TwoLevelResponse{0.2 + 3.0 * u(rng), 0.1 + 5.0 * u(rng)});
    const Eigen::Vector3d pa(u(rng), u(rng), u(rng));
    const Eigen::Vector3d dir = Eigen::Vector3d(u(rng) - 0.5, u(rng) - 0.5, u(rng) - 0.5).normalized();
    const double r = std::pow(10.0, -2.0 + 4.0 * u(rng));
    const double n2 = n_atom_potential({pa, pa + r * dir}, {a, b}, o).value;
    worst = std::max(worst, rel(n2, pp_potential(a, b, r, o).value));
  }
  report(10, "N=2 reduces to pair potential", worst < 1e-10, fmt("worst rel=%.2e", worst));
}

void c11() {
  CasimirOptions o;
  o.rel_tol = 1e-12;
  VdwOptions vo;
  vo.rel_tol = 1e-12;
  const Polarizability unit(StaticResponse{1.0});
  const double pair = pairwise_halfspace_pressure(unit, unit, 1.0, vo).value;
  std::vector<double> dev;
  for (double chi : {0.1, 0.05, 0.025}) {
    const MaterialModel m = ConstantStatic{1.0 + chi, 1.0};
    dev.push_back(casimir_pressure(cavity(m, m, 1.0), ZeroT{}, o).value / (chi * chi) - pair);
  }
  const double r1 = dev[0] / dev[1], r2 = dev[1] / dev[2];
  report(11, "dilute pairwise limit", std::abs(r1 - 2.0) < 0.1 && std::abs(r2 - 2.0) < 0.1,
         fmt("deviation %.4e %.4e %.4e, halving ratios %.4f %.4f", dev[0], dev[1], dev[2], r1, r2));
}

void c12() {
  CasimirOptions o;
  o.rel_tol = 1e-10;
  double worst_low = 0.0;
  for (const auto& s : {cavity(PerfectConductor{}, PerfectConductor{}, 1.0),
                        cavity(barrier_medium(1.0), barrier_medium(1.0), 1.0)}) {
    const double zero = casimir_pressure(s, ZeroT{}, o).value;
    const double warm = casimir_pressure(s, FiniteT{0.01}, o).value;
    worst_low = std::max(worst_low, rel(warm, zero));
  }
  const double kT = 10.0;
  const auto hot = cavity(PerfectConductor{}, PerfectConductor{}, 1.0);
  const double full = casimir_pressure(hot, FiniteT{kT}, o).value;
  const double n0 = kT * pressure_spectral_density(hot, 0.0).value;
  const double dev_high = rel(full, n0);
  // ideal mirrors: the n = 0 term is zeta(3) kT / (4 pi d^3)
  const double dev_zeta = rel(n0, 1.2020569031595942 * kT / (4.0 * pi));
  report(12, "Matsubara limits", worst_low < 1e-3 && dev_high < 1e-2 && dev_zeta < 1e-6,
         fmt("kT=0.01 vs T=0: %.2e; kT=10 vs n=0 term: %.2e (n=0 vs zeta(3) form %.1e)",
             worst_low, dev_high, dev_zeta));
}

TwoLevelNearHalfSpace plasmon_atom(double w) {
  // omega_Te = 1, omega_Pe = 0.75, gamma_e = 0.01, z_A = 0.0075 lambda_Te,
  // omega_Te^2 |d|^2 / (3 pi) = 1e-7.
  DrudeLorentz m;
  m.permittivity = {0.75, 1.0, 0.01};
  return {w, 3.0 * pi * 1e-7, m, 0.0075 * 2.0 * pi};
}

std::vector<double> plasmon_grid() {
  std::vector<double> w;
  for (int i = 0; i <= 600; ++i) w.push_back(0.9 + 0.6 * i / 600.0);
  return w;
}

void c13() {
  const auto w = plasmon_grid();
  std::vector<double> sc, pt;
  for (double x : w) {
    sc.push_back(resonant_force(plasmon_atom(x)));
    pt.push_back(resonant_force_perturbative(plasmon_atom(x)));
  }
  std::vector<double> crossings;
  for (std::size_t i = 1; i < w.size(); ++i)
    if ((sc[i - 1] < 0.0) != (sc[i] < 0.0))
      crossings.push_back(w[i - 1] - sc[i - 1] * (w[i] - w[i - 1]) / (sc[i] - sc[i - 1]));
  const double ws = std::sqrt(1.0 + 0.75 * 0.75 / 2.0);
  const bool one = crossings.size() == 1 && rel(crossings[0], ws) < 0.02;
  const auto lo = std::min_element(pt.begin(), pt.end()) - pt.begin();
  const auto hi = std::max_element(pt.begin(), pt.end()) - pt.begin();
  const bool reduced = std::abs(sc[lo]) <= std::abs(pt[lo]) && std::abs(sc[hi]) <= std::abs(pt[hi]);
  report(13, "excited-atom sign structure", one && reduced,
         fmt("%zu sign change(s)%s, omega_S=%.4f; |sc/pert| at extrema %.3f %.3f",
             crossings.size(), crossings.empty() ? "" : fmt(" at %.4f", crossings[0]).c_str(),
             ws, std::abs(sc[lo] / pt[lo]), std::abs(sc[hi] / pt[hi])));
}

void c14() {
  double worst = 0.0;
  for (double x : plasmon_grid()) {
    if (std::fmod(std::round((x - 0.9) * 1000.0), 10.0) != 0.0) continue;
    const auto sys = plasmon_atom(x);
    const LevelShift level = shift_and_width(sys);
    const double with = offresonant_force(sys, level, 1e-12).value;
    const double without = offresonant_force(sys, LevelShift{level.shift, 0.0}, 1e-12).value;
    worst = std::max(worst, std::abs(with - without) / std::abs(without));
  }
  report(14, "off-resonant force vs linewidth", worst < 1e-3, fmt("worst rel=%.2e", worst));
}

void c15() {
  using cplx = std::complex<double>;
  QuasiMode m;
  m.rabi = 0.37;
  double rabi_err = 0.0;
  for (int i = 0; i <= 200; ++i) {
    const double t = 0.25 * i, c = std::cos(m.rabi * t / 2.0);
    rabi_err = std::max(rabi_err, std::abs(std::norm(upper_amplitude(m, t)) - c * c));
  }
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double vieta = 0.0;
  for (int i = 0; i < 1000; ++i) {
    QuasiMode q;
    q.frequency = 0.5 + u(rng);
    q.atom_frequency = 0.5 + u(rng);
    q.linewidth = 2.0 * u(rng);
    q.rabi = 2.0 * u(rng);
    q.residual_width = 0.1 * u(rng) * q.linewidth;
    const auto r = mode_roots(q);
    const cplx a(0.5 * (q.linewidth - q.residual_width), q.detuning());
    const double scale = std::abs(a) + q.rabi;
    vieta = std::max({vieta, std::abs(r.plus + r.minus + a) / scale,
                      std::abs(r.plus * r.minus - 0.25 * q.rabi * q.rabi) / (scale * scale)});
  }
  // Weak coupling: x = 2 Omega_R / gamma. The leading form -Omega_R^2/(4A)
  // is off by O(x^2); adding -Omega_R^4/(16 A^3) leaves O(x^4).
  const auto taylor = [](double x) {
    QuasiMode q;
    q.linewidth = 1.0;
    q.frequency = 1.1;
    q.rabi = 0.5 * x;
    const cplx a(0.5, q.detuning());
    const cplx exact = mode_roots(q).plus;
    const cplx lead = weak_coupling_rate(q);
    const cplx two = lead - std::pow(q.rabi, 4) / (16.0 * a * a * a);
    return std::pair{std::abs(lead / exact - 1.0), std::abs(two / exact - 1.0)};
  };
  const auto [l1, t1] = taylor(0.02);
  const auto [l2, t2] = taylor(0.01);
  const double order_lead = std::log2(l1 / l2), order_two = std::log2(t1 / t2);
  const bool taylor_ok = std::abs(order_lead - 2.0) < 0.05 && std::abs(order_two - 4.0) < 0.05;
  report(15, "strong-coupling dynamics", rabi_err < 1e-10 && vieta < 1e-14 && taylor_ok,
         fmt("cos^2 err=%.1e vieta=%.1e; Taylor orders %.3f (leading) %.3f (two terms)",
             rabi_err, vieta, order_lead, order_two));
}

void c16() {
  CpOptions o;
  o.rel_tol = 1e-12;
  const DrudeLorentz m = barrier_medium(5.0);
  struct Geometry {
    const char* label;
    AtomGeometry g;
    double lo, hi;
  };
  const std::vector<Geometry> geometries = {
      {"half-space", HalfSpaceGeometry{LayerStack::half_space(m)}, 0.02, 20.0},
      {"plate", PlateGeometry{m, 0.5}, 0.02, 20.0},
      {"cavity",
       CavityGeometry{LayerStack::half_space(m), LayerStack::half_space(ConstantStatic{3.0, 1.0}), 4.0},
       0.1, 3.9},
  };
  double worst = 0.0;
  std::string detail;
  for (const auto& g : geometries) {
    double w = 0.0;
    for (int i = 0; i < 20; ++i) {
      const double z = g.lo * std::pow(g.hi / g.lo, i / 19.0);
      const AtomScenario s{kAtom, g.g, z};
      const auto u = [&](double zz) {
        AtomScenario t = s;
        t.position = zz;
        return cp_potential(t, o).value;
      };
      const double h = 2.5e-3 * std::min(z, g.label[0] == 'c' ? 4.0 - z : z);
      w = std::max(w, rel(cp_force(s, o).value, -five_point(u, z, h)));
    }
    worst = std::max(worst, w);
    detail += fmt("%s %.1e ", g.label, w);
  }
  report(16, "force is minus potential gradient", worst < 1e-6, detail);
}

}  // namespace

int main() {
  const std::vector<void (*)()> criteria = {c1, c2,  c3,  c4,  c5,  c6,  c7,  c8,
                                            c9, c10, c11, c12, c13, c14, c15, c16};
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    try {
      criteria[i]();
    } catch (const std::exception& e) {
      report(static_cast<int>(i + 1), "criterion", false, std::string("exception: ") + e.what());
    }
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
