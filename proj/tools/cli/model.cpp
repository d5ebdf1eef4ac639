#include "model.hpp"

#include <cmath>

#include <dispersion/error.hpp>

namespace dispersion::app {
namespace {

const std::vector<std::string> kCommands = {
    "casimir-pressure", "cp-potential",         "cp-force",         "vdw-pair",
    "vdw-nbody",        "borderline",           "dynamics-resonant", "dynamics-offresonant",
    "dynamics-evolve",  "powerlaw-fit"};

[[noreturn]] void fail(const Entry& e, const std::string& message) {
  throw ParseError(message, e.line, e.column);
}

// Well-formed but unphysical values.
[[noreturn]] void unphysical(const Entry& e, const std::string& message) {
  throw DomainError("line " + std::to_string(e.line) + ", column " + std::to_string(e.column) +
                    ": " + message);
}

}  // namespace

bool builtin_material(const std::string& name) {
  return name == "vacuum" || name == "perfect-conductor" || name == "perfectly-permeable";
}

Scenario::Scenario(Document doc) : doc_(std::move(doc)) {
  const Section& r = section("run");
  const Entry& cmd = entry(r, "command");
  if (std::find(kCommands.begin(), kCommands.end(), cmd.value) == kCommands.end())
    fail(cmd, "unknown command '" + cmd.value + "'");
  run_.command = cmd.value;
  run_.from = number_or(r, "from", 0.0);
  run_.to = number_or(r, "to", 0.0);
  if (const Entry* e = r.find("points")) {
    run_.points = as_integer(*e);
    if (run_.points < 1) fail(*e, "points must be >= 1");
  }
  if (const Entry* e = r.find("spacing")) {
    if (e->value == "log")
      run_.log_spacing = true;
    else if (e->value == "linear")
      run_.log_spacing = false;
    else
      fail(*e, "spacing must be 'log' or 'linear'");
  }
  if (run_.points > 0 && run_.command != "dynamics-evolve" && run_.command != "vdw-nbody") {
    const Entry* f = r.find("from");
    if (!f) throw ParseError("[run] needs 'from' for a sweep", r.line, 1);
    if (!r.find("to")) throw ParseError("[run] needs 'to' for a sweep", r.line, 1);
  }
  if (run_.points > 1) {
    const Entry& t = entry(r, "to");
    if (!(run_.to > run_.from)) fail(t, "sweep range must be ordered (from < to)");
    if (run_.log_spacing && !(run_.from > 0.0)) fail(entry(r, "from"), "log sweep needs from > 0");
  }
  if (const Entry* e = r.find("temperature")) {
    run_.kT = as_double(*e);
    if (run_.kT < 0.0) unphysical(*e, "temperature must be >= 0");
  }
  if (const Entry* e = r.find("tol")) {
    run_.tol = as_double(*e);
    if (!(run_.tol > 0.0 && run_.tol < 1.0)) fail(*e, "tol must lie in (0, 1)");
  }
  if (const Entry* e = r.find("prescription")) {
    if (e->value == "drude")
      run_.prescription = ZeroFrequencyPrescription::Drude;
    else if (e->value == "plasma")
      run_.prescription = ZeroFrequencyPrescription::Plasma;
    else
      fail(*e, "prescription must be 'drude' or 'plasma'");
  }
  if (const Entry* e = r.find("omega_ref_si")) {
    run_.omega_ref_si = as_double(*e);
    if (!(run_.omega_ref_si > 0.0)) fail(*e, "omega_ref_si must be positive");
  }
  if (const Entry* e = r.find("si_output")) run_.si_output = as_bool(*e);

  // Resolve every material and stack once so that bad references surface
  // before any computation.
  for (const Section* s : doc_.all("material")) {
    if (builtin_material(s->name))
      throw ParseError("material name '" + s->name + "' is reserved", s->line, 1);
    build_material(*s);
  }
  for (const Section* s : doc_.all("stack")) {
    const Entry& layers = entry(*s, "layers");
    for (const auto& item : split_list(layers.value, ',')) {
      const auto colon = item.find(':');
      const std::string name = trim(item.substr(0, colon));
      material(name, layers);
    }
  }
}

const Section& Scenario::section(const std::string& kind, const std::string& name) const {
  if (const Section* s = doc_.find(kind, name)) return *s;
  throw ParseError("missing section [" + kind + (name.empty() ? "" : " " + name) + "]", 1, 1);
}

const Entry& Scenario::entry(const Section& s, const std::string& key) const {
  if (const Entry* e = s.find(key)) return *e;
  throw ParseError("section [" + s.kind + (s.name.empty() ? "" : " " + s.name) +
                       "] is missing '" + key + "'",
                   s.line, 1);
}

double Scenario::number(const Section& s, const std::string& key) const {
  return as_double(entry(s, key));
}

double Scenario::number_or(const Section& s, const std::string& key, double fallback) const {
  const Entry* e = s.find(key);
  return e ? as_double(*e) : fallback;
}

std::string Scenario::text_or(const Section& s, const std::string& key,
                              const std::string& fallback) const {
  const Entry* e = s.find(key);
  return e ? e->value : fallback;
}

MaterialModel Scenario::build_material(const Section& s) const {
  const Entry& model = entry(s, "model");
  const auto resonance = [&](const std::string& prefix) {
    DrudeLorentzParams p{0.0, number_or(s, prefix + "_resonance", 1.0),
                         number_or(s, prefix + "_damping", 0.0)};
    const Entry* plasma = s.find(prefix + "_plasma");
    const Entry* stat = s.find(prefix + "_static");
    if (plasma && stat) fail(*stat, "give either " + prefix + "_plasma or " + prefix + "_static");
    if (p.resonance < 0.0) unphysical(entry(s, prefix + "_resonance"), "resonance must be >= 0");
    if (p.damping < 0.0) unphysical(entry(s, prefix + "_damping"), "damping must be >= 0");
    if (plasma) {
      p.plasma = as_double(*plasma);
      if (p.plasma < 0.0) unphysical(*plasma, "plasma frequency must be >= 0");
    } else if (stat) {
      const double v = as_double(*stat);
      if (!(v >= 1.0)) unphysical(*stat, "static value must be >= 1");
      if (p.resonance == 0.0) fail(*stat, "a static value needs a nonzero resonance");
      p = DrudeLorentzParams::from_static(v, p.resonance, p.damping);
    }
    return p;
  };
  if (model.value == "vacuum") return Vacuum{};
  if (model.value == "perfect-conductor") return PerfectConductor{};
  if (model.value == "perfectly-permeable") return PerfectlyPermeable{};
  if (model.value == "constant") {
    ConstantStatic c{number_or(s, "epsilon", 1.0), number_or(s, "mu", 1.0)};
    if (!(c.epsilon >= 1.0)) unphysical(entry(s, "epsilon"), "epsilon must be >= 1");
    if (!(c.mu >= 1.0)) unphysical(entry(s, "mu"), "mu must be >= 1");
    return c;
  }
  if (model.value == "drude-lorentz") return DrudeLorentz{resonance("eps"), resonance("mu")};
  fail(model, "unknown material model '" + model.value + "'");
}

MaterialModel Scenario::material(const std::string& name, const Entry& where) const {
  if (name == "vacuum") return Vacuum{};
  if (name == "perfect-conductor") return PerfectConductor{};
  if (name == "perfectly-permeable") return PerfectlyPermeable{};
  if (const Section* s = doc_.find("material", name)) return build_material(*s);
  fail(where, "unresolved material reference '" + name + "'");
}

LayerStack Scenario::stack(const std::string& name, const Entry& where) const {
  const Section* s = doc_.find("stack", name);
  if (!s) return LayerStack::half_space(material(name, where));
  const Entry& layers = entry(*s, "layers");
  std::vector<Layer> out;
  const auto items = split_list(layers.value, ',');
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto colon = items[i].find(':');
    Layer l;
    l.material = material(trim(items[i].substr(0, colon)), layers);
    if (colon != std::string::npos) {
      Entry t{"thickness", trim(items[i].substr(colon + 1)), layers.line, layers.column};
      l.thickness = as_double(t);
    } else if (i + 1 != items.size()) {
      fail(layers, "only the last layer may omit its thickness");
    }
    out.push_back(std::move(l));
  }
  return LayerStack(std::move(out));
}

ResponseModel Scenario::response(const Section& atom) const {
  const std::string model = text_or(atom, "model", "two-level");
  if (model == "static") return StaticResponse{number(atom, "alpha0")};
  if (model == "two-level") {
    const double w = number(atom, "frequency");
    if (!(w > 0.0)) unphysical(entry(atom, "frequency"), "frequency must be positive");
    const Entry* a = atom.find("alpha0");
    const Entry* d = atom.find("dipole_squared");
    if (a && d) fail(*d, "give either alpha0 or dipole_squared");
    if (d) return TwoLevelResponse::from_dipole(w, as_double(*d));
    return TwoLevelResponse{w, number(atom, "alpha0")};
  }
  if (model == "oscillators") {
    const Entry& list = entry(atom, "oscillators");
    MultiOscillatorResponse m;
    for (const auto& item : split_list(list.value, ',')) {
      const auto colon = item.find(':');
      if (colon == std::string::npos) fail(list, "oscillators are 'frequency:weight' pairs");
      Entry w{"frequency", trim(item.substr(0, colon)), list.line, list.column};
      Entry g{"weight", trim(item.substr(colon + 1)), list.line, list.column};
      m.oscillators.push_back({as_double(w), as_double(g)});
    }
    return m;
  }
  fail(entry(atom, "model"), "unknown atom model '" + model + "'");
}

bool Scenario::magnetic(const Section& atom) const {
  const std::string k = text_or(atom, "kind", "polarizable");
  if (k == "polarizable") return false;
  if (k == "magnetizable") return true;
  fail(entry(atom, "kind"), "kind must be 'polarizable' or 'magnetizable'");
}

Polarizability Scenario::polarizability(const Section& atom) const {
  if (magnetic(atom)) fail(entry(atom, "kind"), "expected a polarizable atom");
  ResponseModel m = response(atom);
  detail::validate(m);
  return Polarizability(std::move(m));
}

Magnetizability Scenario::magnetizability(const Section& atom) const {
  ResponseModel m = response(atom);
  detail::validate(m);
  return Magnetizability(std::move(m));
}

PlanarScenario Scenario::planar() const {
  const Section& g = section("geometry");
  PlanarScenario s;
  s.left = stack(entry(g, "left").value, entry(g, "left"));
  s.right = stack(entry(g, "right").value, entry(g, "right"));
  if (const Entry* e = g.find("interspace")) s.interspace = material(e->value, *e);
  s.width = number_or(g, "width", 1.0);
  return s;
}

AtomScenario Scenario::atom_scenario(double z) const {
  const Section& g = section("geometry");
  AtomScenario a;
  a.atom = polarizability(section("atom"));
  a.position = z;
  const Entry& kind = entry(g, "kind");
  if (kind.value == "half-space") {
    a.geometry = HalfSpaceGeometry{stack(entry(g, "stack").value, entry(g, "stack"))};
  } else if (kind.value == "plate" || kind.value == "thin-plate") {
    a.geometry = PlateGeometry{material(entry(g, "material").value, entry(g, "material")),
                               number(g, "thickness")};
  } else if (kind.value == "cavity") {
    a.geometry = CavityGeometry{stack(entry(g, "left").value, entry(g, "left")),
                                stack(entry(g, "right").value, entry(g, "right")),
                                number(g, "width")};
  } else if (kind.value == "ideal-mirror") {
    const std::string m = text_or(g, "mirror", "conductor");
    if (m != "conductor" && m != "permeable")
      fail(entry(g, "mirror"), "mirror must be 'conductor' or 'permeable'");
    a.geometry = IdealMirrorGeometry{m == "conductor" ? MirrorKind::Conductor
                                                      : MirrorKind::Permeable};
  } else {
    fail(kind, "unknown geometry kind '" + kind.value + "'");
  }
  return a;
}

TwoLevelNearHalfSpace Scenario::excited_atom(double omega10) const {
  const Section& g = section("geometry");
  const Section& atom = section("atom");
  TwoLevelNearHalfSpace s;
  s.frequency = omega10;
  s.dipole_weight = number(atom, "dipole_weight");
  s.material = material(entry(g, "material").value, entry(g, "material"));
  s.position = number(g, "position");
  return s;
}

QuasiMode Scenario::quasi_mode() const {
  const Section& m = section("mode");
  QuasiMode q;
  q.frequency = number(m, "frequency");
  q.linewidth = number(m, "linewidth");
  q.rabi = number(m, "rabi");
  q.residual_width = number_or(m, "residual_width", 0.0);
  q.residual_shift = number_or(m, "residual_shift", 0.0);
  q.atom_frequency = number_or(m, "atom_frequency", q.frequency);
  return q;
}

}  // namespace dispersion::app
