#include <filesystem>
#include <fstream>

#include "commands.hpp"

namespace dispersion::app {
namespace {

const char* kAtom = R"(
[atom]
model = two-level
frequency = 1
alpha0 = 1
)";

// Magneto-dielectric half space; the static permeability is varied per series.
const char* kMedium = R"(
[material medium]
model = drude-lorentz
eps_plasma = 0.75
eps_resonance = 1.03
eps_damping = 0.001
mu_static = 5
mu_resonance = 1
mu_damping = 0.001
)";

const char* kFig5Materials = R"(
[material magnetodielectric]
model = drude-lorentz
eps_plasma = 0.75
eps_resonance = 1.03
eps_damping = 0.001
mu_static = 5
mu_resonance = 1
mu_damping = 0.001

[material dielectric]
model = drude-lorentz
eps_plasma = 0.75
eps_resonance = 1.03
eps_damping = 0.001

[material magnetic]
model = drude-lorentz
eps_plasma = 0
mu_static = 5
mu_resonance = 1
mu_damping = 0.001
)";

// Excited atom near a surface-plasmon medium: omega_Te = 1,
// z_A = 0.0075 lambda_Te, omega_Te^2 D / 3 pi = 1e-7.
const char* kFig6 = R"(
[material surface]
model = drude-lorentz
eps_plasma = 0.75
eps_resonance = 1
eps_damping = 0.01

[geometry]
material = surface
position = 0.047123889803846894

[atom]
dipole_weight = 9.4247779607693797e-07
)";

std::string run_block(const std::string& command, const std::string& from,
                      const std::string& to, int points, const std::string& spacing) {
  return "[run]\ncommand = " + command + "\nfrom = " + from + "\nto = " + to +
         "\npoints = " + std::to_string(points) + "\nspacing = " + spacing + "\n";
}

struct FitCase {
  const char* label;
  double expected;
  std::string scenario;
};

std::vector<FitCase> table1_cases() {
  const std::string atom_a = "\n[atom A]\nmodel = two-level\nfrequency = 1\nalpha0 = 1\n";
  const std::string atom_bp = "\n[atom B]\nmodel = two-level\nfrequency = 1\nalpha0 = 1\n";
  const std::string atom_bm =
      "\n[atom B]\nkind = magnetizable\nmodel = two-level\nfrequency = 1\nalpha0 = 1\n";
  const std::string diel =
      "\n[material dielectric]\nmodel = drude-lorentz\neps_plasma = 0.75\neps_resonance = 1.03\n"
      "eps_damping = 0.001\n";
  const std::string magn =
      "\n[material magnetic]\nmodel = drude-lorentz\nmu_static = 5\nmu_resonance = 1\n"
      "mu_damping = 0.001\n";
  const auto fit = [](const std::string& quantity, const char* lo, const char* hi) {
    return "[run]\ncommand = powerlaw-fit\nfrom = " + std::string(lo) + "\nto = " + hi +
           "\npoints = 9\ntol = 1e-10\n\n[fit]\nquantity = " + quantity + "\n";
  };
  const char* far_lo = "100";
  const char* far_hi = "1000";
  const char* near_lo = "0.0001";
  const char* near_hi = "0.001";
  const std::string half_d = "\n[geometry]\nkind = half-space\nstack = dielectric\n";
  const std::string half_m = "\n[geometry]\nkind = half-space\nstack = magnetic\n";
  const std::string pair_pp = "\n[geometry]\nleft = dielectric\nright = dielectric\n";
  const std::string pair_pm = "\n[geometry]\nleft = dielectric\nright = magnetic\n";
  return {
      {"atoms-pp-retarded", -7, fit("vdw-pair", far_lo, far_hi) + atom_a + atom_bp},
      {"atoms-pm-retarded", -7, fit("vdw-pair", far_lo, far_hi) + atom_a + atom_bm},
      {"atoms-pp-nonretarded", -6, fit("vdw-pair", near_lo, near_hi) + atom_a + atom_bp},
      {"atoms-pm-nonretarded", -4, fit("vdw-pair", near_lo, near_hi) + atom_a + atom_bm},
      {"atom-wall-pp-retarded", -4, fit("cp-potential", far_lo, far_hi) + kAtom + diel + half_d},
      {"atom-wall-pm-retarded", -4, fit("cp-potential", far_lo, far_hi) + kAtom + magn + half_m},
      {"atom-wall-pp-nonretarded", -3, fit("cp-potential", near_lo, near_hi) + kAtom + diel + half_d},
      {"atom-wall-pm-nonretarded", -1, fit("cp-potential", near_lo, near_hi) + kAtom + magn + half_m},
      {"walls-pp-retarded", -4, fit("casimir-pressure", far_lo, far_hi) + diel + pair_pp},
      {"walls-pm-retarded", -4, fit("casimir-pressure", far_lo, far_hi) + diel + magn + pair_pm},
      {"walls-pp-nonretarded", -3, fit("casimir-pressure", near_lo, near_hi) + diel + pair_pp},
      {"walls-pm-nonretarded", -1, fit("casimir-pressure", near_lo, near_hi) + diel + magn + pair_pm},
  };
}

void write(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot write '" + path.string() + "'");
  f << text;
  if (!f) throw std::runtime_error("write failed for '" + path.string() + "'");
}

}  // namespace

std::vector<std::string> emit_reference_suite(const std::string& directory, int points) {
  namespace fs = std::filesystem;
  fs::create_directories(directory);
  const fs::path dir(directory);
  std::vector<std::pair<std::string, std::string>> scenarios = {
      {"fig2_borderline", run_block("borderline", "1.0001", "10000", points, "log")},
      {"fig3_cp_halfspace",
       run_block("cp-potential", "0.01", "10", points, "log") + kAtom + kMedium +
           "\n[geometry]\nkind = half-space\nstack = medium\n"
           "\n[series]\ntarget = material medium mu_static\nvalues = 1, 2, 3, 4, 5\n"},
      {"fig4_cp_plate",
       run_block("cp-potential", "0.01", "10", points, "log") + kAtom + kMedium +
           "\n[geometry]\nkind = plate\nmaterial = medium\nthickness = 1\n"
           "\n[series]\ntarget = geometry thickness\nvalues = 0.01, 0.1, 1, 10\n"},
      {"fig5_cp_cavity",
       run_block("cp-potential", "0.1", "14.9", points, "linear") + kAtom + kFig5Materials +
           "\n[geometry]\nkind = cavity\nleft = magnetodielectric\nright = magnetodielectric\n"
           "width = 15\n"
           "\n[series]\ntarget = geometry left; geometry right\n"
           "values = magnetodielectric, dielectric, magnetic\n"},
      {"fig6_resonant_force",
       run_block("dynamics-resonant", "0.9", "1.5", points, "linear") + kFig6},
      {"fig7_offresonant_force",
       run_block("dynamics-offresonant", "0.9", "1.5", points, "linear") + kFig6},
  };
  std::vector<std::string> written;
  for (const auto& [name, text] : scenarios) {
    const RunOutcome r = run_document(parse_document(text));
    write(dir / (name + ".csv"), r.table.to_csv());
    written.push_back(name + ".csv");
  }

  OutputTable t1;
  t1.metadata.push_back("command: powerlaw-fit (atom-atom, atom-wall, wall-wall)");
  t1.metadata.push_back("atom-atom and atom-wall fit potentials, wall-wall fits the pressure");
  t1.label_name = "case";
  t1.columns = {{"lo", Unit::Length},       {"hi", Unit::Length},
                {"exponent", Unit::None},   {"expected", Unit::None},
                {"deviation", Unit::None},  {"sign", Unit::None}};
  for (const auto& c : table1_cases()) {
    const RunOutcome r = run_document(parse_document(c.scenario));
    const auto& row = r.table.rows.front();
    t1.labels.push_back(c.label);
    t1.rows.push_back({row[0], row[1], row[2], c.expected, row[2] - c.expected, row[4]});
    t1.flags.push_back(r.table.flags.front());
  }
  write(dir / "table1_power_laws.csv", t1.to_csv());
  written.push_back("table1_power_laws.csv");
  return written;
}

}  // namespace dispersion::app
