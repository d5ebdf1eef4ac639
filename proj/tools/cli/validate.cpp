#include <cmath>
#include <set>

#include <dispersion/error.hpp>

#include "commands.hpp"
#include "model.hpp"

namespace dispersion::app {
namespace {

const std::set<std::string> kSections = {"run", "material", "stack", "geometry",
                                         "atom", "mode", "fit", "series"};

std::string located(const ParseError& e) {
  return "line " + std::to_string(e.line()) + ", column " + std::to_string(e.column()) +
         ": " + e.message();
}

void check_command(const Scenario& s, std::vector<Diagnostic>& out) {
  const RunConfig& r = s.run();
  const std::string& c = r.command == "powerlaw-fit"
                             ? s.entry(s.section("fit"), "quantity").value
                             : r.command;
  const double x = r.from;
  if (c == "casimir-pressure") {
    PlanarScenario p = s.planar();
    if (x > 0.0) p.width = x;
    p.validate();
  } else if (c == "cp-potential" || c == "cp-force") {
    const AtomScenario a = s.atom_scenario(x > 0.0 ? x : 1.0);
    a.validate();
    const Entry* kind = s.section("geometry").find("kind");
    if (kind && kind->value == "thin-plate") {
      const auto& plate = std::get<PlateGeometry>(a.geometry);
      const double n0 = std::sqrt(static_epsilon(plate.material) * static_mu(plate.material));
      const double zmin = std::min(r.from, r.to > 0.0 ? r.to : r.from);
      if (!(plate.thickness < 0.1 * zmin / n0))
        out.push_back({"warning",
                       "thin-plate asymptote requested outside its window: thickness " +
                           format_number(plate.thickness) + " is not < 0.1 z_A / n(0) at z_A = " +
                           format_number(zmin)});
    }
  } else if (c == "vdw-pair") {
    s.polarizability(s.section("atom", "A"));
    const Section& b = s.section("atom", "B");
    if (s.magnetic(b))
      s.magnetizability(b);
    else
      s.polarizability(b);
  } else if (c == "vdw-nbody") {
    if (s.document().all("atom").size() < 2)
      out.push_back({"error", "vdw-nbody needs at least two [atom] sections"});
  } else if (c == "dynamics-resonant" || c == "dynamics-offresonant") {
    const TwoLevelNearHalfSpace sys = s.excited_atom(x > 0.0 ? x : 1.0);
    sys.validate();
    if (!sys.nonretarded())
      out.push_back({"warning", "atom position is outside the nonretarded window (z omega_10 >= 0.1)"});
  } else if (c == "dynamics-evolve") {
    const QuasiMode m = s.quasi_mode();
    m.validate();
    if (classify(m) == CouplingRegime::Intermediate)
      out.push_back({"warning", "quasi-mode parameters lie between the weak and strong coupling regimes"});
  }
}

}  // namespace

std::vector<Diagnostic> validate_text(const std::string& text) {
  std::vector<Diagnostic> out;
  Document doc;
  try {
    doc = parse_scenario_text(text);
  } catch (const ParseError& e) {
    out.push_back({"error", located(e)});
    return out;
  }
  for (const auto& s : doc.sections)
    if (!kSections.count(s.kind))
      out.push_back({"warning", "line " + std::to_string(s.line) + ": unknown section [" +
                                    s.kind + "] is ignored"});
  std::optional<Scenario> scn;
  try {
    scn.emplace(doc);
  } catch (const ParseError& e) {
    out.push_back({"error", located(e)});
    return out;
  } catch (const DomainError& e) {
    out.push_back({"error", e.what()});
    return out;
  }
  for (const Section* st : doc.all("stack")) {
    try {
      scn->stack(st->name, *st->find("layers"));
    } catch (const InvalidStack& e) {
      out.push_back({"error", "invalid stack [stack " + st->name + "]: " + e.what()});
    } catch (const ParseError& e) {
      out.push_back({"error", located(e)});
    }
  }
  if (scn->run().si_output && !(scn->run().omega_ref_si > 0.0))
    out.push_back({"error", "unit inconsistency: si_output = true needs omega_ref_si (rad/s)"});
  if (!scn->run().si_output && scn->run().omega_ref_si > 0.0)
    out.push_back({"warning", "omega_ref_si is set but si_output is false; output stays in natural units"});
  try {
    check_command(*scn, out);
  } catch (const ParseError& e) {
    out.push_back({"error", located(e)});
  } catch (const InvalidStack& e) {
    out.push_back({"error", std::string("invalid stack: ") + e.what()});
  } catch (const DomainError& e) {
    out.push_back({"error", e.what()});
  }
  return out;
}

}  // namespace dispersion::app
