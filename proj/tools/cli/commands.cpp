#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <tuple>
#include <set>
#include <thread>

#include <dispersion/error.hpp>

#include "model.hpp"

namespace dispersion::app {
namespace {

struct Row {
  std::vector<double> values;
  std::set<std::string> tags;
};

struct Partial {
  std::vector<Column> columns;
  std::vector<Row> rows;
};

using PointFn = Row (*)(const Scenario&, double);

std::string join_tags(const std::set<std::string>& tags) {
  if (tags.empty()) return "ok";
  std::string s;
  for (const auto& t : tags) s += (s.empty() ? "" : "|") + t;
  return s;
}

// Runs f(i) for i in [0, n) on a small thread pool; the exception of the
// lowest failing index is rethrown so failures are reproducible.
template <class F>
void parallel_for(std::size_t n, F&& f) {
  const std::size_t workers =
      std::min<std::size_t>(n, std::max(1u, std::thread::hardware_concurrency()));
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        f(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

std::vector<double> sweep_grid(const RunConfig& r) {
  if (r.points < 1) throw ParseError("[run] needs points >= 1 for a sweep", 1, 1);
  std::vector<double> xs(r.points);
  for (long i = 0; i < r.points; ++i) {
    if (r.points == 1) {
      xs[i] = r.from;
      break;
    }
    const double t = static_cast<double>(i) / static_cast<double>(r.points - 1);
    xs[i] = r.log_spacing ? r.from * std::pow(r.to / r.from, t) : r.from + (r.to - r.from) * t;
  }
  if (r.points > 1) xs.back() = r.to;
  return xs;
}

void tag_quad(Row& row, bool converged) {
  if (!converged) row.tags.insert("nonconverged");
}

// ---- point evaluators -----------------------------------------------------

Row casimir_point(const Scenario& s, double d) {
  PlanarScenario p = s.planar();
  p.width = d;
  CasimirOptions o;
  o.rel_tol = s.run().tol;
  o.prescription = s.run().prescription;
  const TemperatureSpec temp =
      s.run().kT > 0.0 ? TemperatureSpec{FiniteT{s.run().kT}} : TemperatureSpec{ZeroT{}};
  const PressureResult r = casimir_pressure(p, temp, o);
  Row row{{d, r.value, r.error}, {}};
  tag_quad(row, r.converged);
  return row;
}

ThinPlateForm thin_form(const Scenario& s) {
  const Section& g = s.section("geometry");
  const std::string f = s.text_or(g, "form", "full");
  if (f == "full") return ThinPlateForm::Full;
  if (f == "retarded") return ThinPlateForm::Retarded;
  if (f == "nonretarded-dielectric") return ThinPlateForm::NonretardedDielectric;
  if (f == "nonretarded-magnetic") return ThinPlateForm::NonretardedMagnetic;
  const Entry& e = s.entry(g, "form");
  throw ParseError("unknown thin-plate form '" + f + "'", e.line, e.column);
}

bool is_thin_plate(const Scenario& s) {
  const Entry* k = s.section("geometry").find("kind");
  return k && k->value == "thin-plate";
}

Row cp_point(const Scenario& s, double z, bool force) {
  const Section& g = s.section("geometry");
  CpOptions o;
  o.rel_tol = s.run().tol;
  if (const Entry* e = g.find("multiple_reflections")) o.multiple_reflections = as_bool(*e);
  CpResult r;
  if (is_thin_plate(s)) {
    if (force) throw DomainError("cp-force is not available for the thin-plate asymptotes");
    const AtomScenario a = s.atom_scenario(z);
    const auto& plate = std::get<PlateGeometry>(a.geometry);
    r = thin_plate_asymptote(a.atom, plate.material, z, plate.thickness, thin_form(s), o);
  } else {
    const AtomScenario a = s.atom_scenario(z);
    r = force ? cp_force(a, o) : cp_potential(a, o);
  }
  Row row{{z, r.value, r.error}, {}};
  tag_quad(row, r.converged);
  if (r.regime_warning) row.tags.insert("regime-warning");
  return row;
}

Row cp_potential_point(const Scenario& s, double z) { return cp_point(s, z, false); }
Row cp_force_point(const Scenario& s, double z) { return cp_point(s, z, true); }

VdwOptions vdw_options(const Scenario& s) {
  VdwOptions o;
  o.rel_tol = s.run().tol;
  return o;
}

Row vdw_pair_point(const Scenario& s, double r) {
  const Section& a = s.section("atom", "A");
  const Section& b = s.section("atom", "B");
  const QuadResult q = s.magnetic(b)
                           ? pm_potential(s.polarizability(a), s.magnetizability(b), r, vdw_options(s))
                           : pp_potential(s.polarizability(a), s.polarizability(b), r, vdw_options(s));
  Row row{{r, q.value, q.error}, {}};
  tag_quad(row, q.converged);
  return row;
}

Eigen::Vector3d position_of(const Section& atom) {
  const Entry* e = atom.find("position");
  if (!e) throw ParseError("atom [" + atom.kind + " " + atom.name + "] needs a position", atom.line, 1);
  const auto parts = split_list(e->value, ',');
  if (parts.size() != 3) throw ParseError("position expects 'x, y, z'", e->line, e->column);
  Eigen::Vector3d v;
  for (int i = 0; i < 3; ++i) v[i] = as_double(Entry{"position", parts[i], e->line, e->column});
  return v;
}

Row vdw_nbody_point(const Scenario& s, double scale) {
  std::vector<Eigen::Vector3d> pos;
  std::vector<Polarizability> atoms;
  for (const Section* a : s.document().all("atom")) {
    pos.push_back(scale * position_of(*a));
    atoms.push_back(s.polarizability(*a));
  }
  const QuadResult q = n_atom_potential(pos, atoms, vdw_options(s));
  Row row{{scale, q.value, q.error}, {}};
  tag_quad(row, q.converged);
  return row;
}

Row borderline_point(const Scenario&, double eps) {
  const BorderlinePoint p = repulsion_borderline({eps}).front();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  Row row;
  if (p.mu) {
    const double mu = *p.mu;
    row.values = {eps, mu, eps > 1.0 ? (mu - 1.0) / (eps - 1.0) : nan, mu / eps};
  } else {
    row.values = {eps, nan, nan, nan};
    row.tags.insert("no-crossing");
  }
  return row;
}

struct Solved {
  LevelShift level;
  std::set<std::string> tags;
  bool ok = true;
};

Solved solve_level(const TwoLevelNearHalfSpace& sys) {
  Solved out;
  if (!sys.nonretarded()) out.tags.insert("retarded-window");
  try {
    const ShiftResult r = solve_shift(sys);
    if (r.bracketed) out.tags.insert("bracketed");
    out.level = {r.shift, width(sys, r.shift)};
  } catch (const ConvergenceError&) {
    out.tags.insert("nonconverged");
    out.ok = false;
  }
  return out;
}

Row resonant_point(const Scenario& s, double w) {
  const TwoLevelNearHalfSpace sys = s.excited_atom(w);
  const Solved lv = solve_level(sys);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  Row row{{w, nan, nan, nan, resonant_force_perturbative(sys)}, lv.tags};
  if (lv.ok) {
    row.values[1] = lv.level.shift;
    row.values[2] = lv.level.width;
    row.values[3] = resonant_force(sys, lv.level);
  }
  return row;
}

Row offresonant_point(const Scenario& s, double w) {
  const TwoLevelNearHalfSpace sys = s.excited_atom(w);
  const Solved lv = solve_level(sys);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double tol = s.run().tol;
  const QuadResult pert = offresonant_force(sys, LevelShift{}, tol);
  Row row{{w, nan, nan, pert.value, pert.error}, lv.tags};
  tag_quad(row, pert.converged);
  if (lv.ok) {
    const QuadResult full = offresonant_force(sys, lv.level, tol);
    const QuadResult narrow = offresonant_force(sys, LevelShift{lv.level.shift, 0.0}, tol);
    row.values[1] = full.value;
    row.values[2] = narrow.value;
    row.values[4] = std::max({full.error, narrow.error, pert.error});
    tag_quad(row, full.converged && narrow.converged);
  }
  return row;
}

const char* regime_name(CouplingRegime r) {
  switch (r) {
    case CouplingRegime::Weak: return "weak";
    case CouplingRegime::Intermediate: return "intermediate";
    case CouplingRegime::Strong: return "strong";
  }
  return "weak";
}

Row evolve_point(const Scenario& s, double t) {
  const QuasiMode mode = s.quasi_mode();
  const Section& m = s.section("mode");
  const std::string want = s.text_or(m, "regime", "auto");
  const CouplingRegime actual = classify(mode);
  bool weak = false;
  if (want == "auto")
    weak = actual == CouplingRegime::Weak;
  else if (want == "weak")
    weak = true;
  else if (want != "strong") {
    const Entry& e = s.entry(m, "regime");
    throw ParseError("regime must be auto, weak or strong", e.line, e.column);
  }
  Row row;
  row.tags.insert(regime_name(actual));
  EvolutionResult r;
  if (weak) {
    const double rate = m.find("rate")
                            ? s.number(m, "rate")
                            : mode.residual_width - 2.0 * weak_coupling_rate(mode).real();
    r = evolve_weak(rate, {t});
    if (actual != CouplingRegime::Weak) row.tags.insert("regime-warning");
  } else {
    r = evolve_strong(mode, {t});
    if (r.regime_warning) row.tags.insert("regime-warning");
  }
  row.values = {t, r.population.front(), r.force_scale.front()};
  return row;
}

struct CommandInfo {
  const char* name;
  PointFn point;
  std::vector<Column> columns;
};

const std::vector<CommandInfo>& command_table() {
  static const std::vector<CommandInfo> table = {
      {"casimir-pressure", casimir_point,
       {{"d", Unit::Length}, {"pressure", Unit::Pressure}, {"error", Unit::Pressure}}},
      {"cp-potential", cp_potential_point,
       {{"z", Unit::Length}, {"potential", Unit::Energy}, {"error", Unit::Energy}}},
      {"cp-force", cp_force_point,
       {{"z", Unit::Length}, {"force", Unit::Force}, {"error", Unit::Force}}},
      {"vdw-pair", vdw_pair_point,
       {{"r", Unit::Length}, {"potential", Unit::Energy}, {"error", Unit::Energy}}},
      {"vdw-nbody", vdw_nbody_point,
       {{"scale", Unit::None}, {"potential", Unit::Energy}, {"error", Unit::Energy}}},
      {"borderline", borderline_point,
       {{"eps", Unit::None}, {"mu", Unit::None}, {"slope", Unit::None}, {"ratio", Unit::None}}},
      {"dynamics-resonant", resonant_point,
       {{"omega10", Unit::Frequency},
        {"shift", Unit::Frequency},
        {"width", Unit::Frequency},
        {"force", Unit::Force},
        {"force_perturbative", Unit::Force}}},
      {"dynamics-offresonant", offresonant_point,
       {{"omega10", Unit::Frequency},
        {"force", Unit::Force},
        {"force_unbroadened", Unit::Force},
        {"force_perturbative", Unit::Force},
        {"error", Unit::Force}}},
      {"dynamics-evolve", evolve_point,
       {{"t", Unit::Time}, {"population", Unit::None}, {"force_scale", Unit::None}}},
  };
  return table;
}

const CommandInfo& command_info(const std::string& name) {
  for (const auto& c : command_table())
    if (name == c.name) return c;
  throw ParseError("command '" + name + "' has no sweep", 1, 1);
}

Partial sweep(const Scenario& s) {
  const CommandInfo& info = command_info(s.run().command);
  const std::vector<double> xs = sweep_grid(s.run());
  Partial out;
  out.columns = info.columns;
  out.rows.resize(xs.size());
  parallel_for(xs.size(), [&](std::size_t i) { out.rows[i] = info.point(s, xs[i]); });
  return out;
}

Partial fit(const Scenario& s) {
  const Section& f = s.section("fit");
  const Entry& q = s.entry(f, "quantity");
  if (q.value == "powerlaw-fit" || q.value == "borderline" ||
      q.value.rfind("dynamics", 0) == 0 || q.value == "vdw-nbody")
    throw ParseError("quantity must be a potential or pressure command", q.line, q.column);
  const CommandInfo& info = command_info(q.value);
  std::vector<std::pair<double, double>> windows;
  if (const Entry* w = f.find("windows")) {
    for (const auto& item : split_list(w->value, ',')) {
      const auto colon = item.find(':');
      if (colon == std::string::npos) throw ParseError("windows are 'lo:hi' pairs", w->line, w->column);
      windows.emplace_back(as_double(Entry{"windows", trim(item.substr(0, colon)), w->line, w->column}),
                           as_double(Entry{"windows", trim(item.substr(colon + 1)), w->line, w->column}));
    }
  } else {
    windows.emplace_back(s.run().from, s.run().to);
  }
  const long n = s.run().points;
  if (n < 2) throw ParseError("powerlaw-fit needs points >= 2", 1, 1);
  Partial out;
  out.columns = {{"lo", Unit::Length},     {"hi", Unit::Length},
                 {"exponent", Unit::None}, {"prefactor", Unit::None},
                 {"sign", Unit::None},     {"max_residual", Unit::None}};
  for (const auto& [lo, hi] : windows) {
    std::vector<Row> pts(n);
    std::vector<double> xs(n);
    for (long i = 0; i < n; ++i)
      xs[i] = lo * std::pow(hi / lo, static_cast<double>(i) / static_cast<double>(n - 1));
    parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) { pts[i] = info.point(s, xs[i]); });
    Row row;
    long k = 0;
    for (const auto& p : pts) row.tags.insert(p.tags.begin(), p.tags.end());
    const PowerLawFit pf =
        power_law_fit([&](double) { return pts[k++].values[1]; }, lo, hi, static_cast<int>(n));
    row.values = {lo, hi, pf.exponent, pf.prefactor, pf.sign, pf.max_residual};
    out.rows.push_back(std::move(row));
  }
  return out;
}

Partial compute(const Scenario& s) {
  return s.run().command == "powerlaw-fit" ? fit(s) : sweep(s);
}

struct SeriesSpec {
  std::vector<std::tuple<std::string, std::string, std::string>> targets;
  std::vector<std::string> values;
};

std::optional<SeriesSpec> series_of(const Document& doc) {
  const Section* s = doc.find("series");
  if (!s) return std::nullopt;
  SeriesSpec out;
  const Entry* t = s->find("target");
  const Entry* v = s->find("values");
  if (!t || !v) throw ParseError("[series] needs 'target' and 'values'", s->line, 1);
  for (const auto& item : split_list(t->value, ';')) {
    std::vector<std::string> words;
    std::string cur;
    std::istringstream in(item);
    while (in >> cur) words.push_back(cur);
    if (words.size() == 2)
      out.targets.emplace_back(words[0], "", words[1]);
    else if (words.size() == 3)
      out.targets.emplace_back(words[0], words[1], words[2]);
    else
      throw ParseError("series target is 'section [name] key'", t->line, t->column);
    const auto& [kind, name, key] = out.targets.back();
    if (!doc.find(kind, name))
      throw ParseError("series target section [" + kind + (name.empty() ? "" : " " + name) +
                           "] does not exist",
                       t->line, t->column);
    (void)key;
  }
  out.values = split_list(v->value, ',');
  if (out.values.empty()) throw ParseError("series needs at least one value", v->line, v->column);
  return out;
}

}  // namespace

Document apply_overrides(Document doc, const Overrides& o) {
  Section& run = doc.require("run");
  if (o.command) run.set("command", *o.command);
  if (o.points) run.set("points", std::to_string(*o.points));
  if (o.tol) run.set("tol", format_number(*o.tol));
  return doc;
}

RunOutcome run_document(const Document& doc) {
  const Scenario base(doc);
  RunOutcome out;
  out.omega_ref_si = base.run().si_output ? base.run().omega_ref_si : 0.0;
  if (base.run().si_output && !(base.run().omega_ref_si > 0.0))
    throw ParseError("si_output needs omega_ref_si", base.section("run").line, 1);
  OutputTable& t = out.table;
  t.scenario = doc.canonical();
  t.metadata.push_back("command: " + base.run().command);

  const auto series = series_of(doc);
  if (!series) {
    Partial p = compute(base);
    t.columns = p.columns;
    for (auto& r : p.rows) {
      t.rows.push_back(r.values);
      t.flags.push_back(join_tags(r.tags));
    }
  } else {
    std::vector<Partial> parts;
    for (const auto& v : series->values) {
      Document d = doc;
      for (const auto& [kind, name, key] : series->targets) d.find(kind, name)->set(key, v);
      parts.push_back(compute(Scenario(d)));
    }
    t.columns.push_back(parts.front().columns.front());
    for (std::size_t k = 0; k < parts.size(); ++k)
      for (std::size_t c = 1; c < parts[k].columns.size(); ++c)
        t.columns.push_back({parts[k].columns[c].name + "[" + series->values[k] + "]",
                             parts[k].columns[c].unit});
    for (std::size_t r = 0; r < parts.front().rows.size(); ++r) {
      std::vector<double> vals{parts.front().rows[r].values.front()};
      std::set<std::string> tags;
      for (const auto& p : parts) {
        vals.insert(vals.end(), p.rows[r].values.begin() + 1, p.rows[r].values.end());
        tags.insert(p.rows[r].tags.begin(), p.rows[r].tags.end());
      }
      t.rows.push_back(std::move(vals));
      t.flags.push_back(join_tags(tags));
    }
  }
  for (const auto& f : t.flags)
    if (f.find("nonconverged") != std::string::npos) out.exit_code = kNotConverged;
  return out;
}

}  // namespace dispersion::app
