#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include <dispersion/error.hpp>

#include "commands.hpp"

namespace app = dispersion::app;

namespace {

int report(int code, const std::string& message) {
  std::cerr << "dispersion: " << message << '\n';
  return code;
}

int run_command(const std::string& command, const std::string& scenario_path,
                const std::string& out_path, const app::Overrides& overrides) {
  try {
    app::Overrides o = overrides;
    o.command = command;
    const app::Document doc =
        app::apply_overrides(app::parse_scenario_text(app::read_file(scenario_path)), o);
    const app::RunOutcome r = app::run_document(doc);
    const std::string csv = r.table.to_csv(r.omega_ref_si);
    if (out_path.empty()) {
      std::cout << csv;
    } else {
      std::ofstream f(out_path, std::ios::binary | std::ios::trunc);
      if (!(f << csv)) return report(app::kDomainError, "cannot write '" + out_path + "'");
    }
    if (r.exit_code == app::kNotConverged)
      std::cerr << "dispersion: some points did not converge (see flag column)\n";
    return r.exit_code;
  } catch (const app::ParseError& e) {
    return report(app::kParseError, scenario_path + ": " + e.what());
  } catch (const dispersion::ConvergenceError& e) {
    return report(app::kNotConverged, e.what());
  } catch (const dispersion::DomainError& e) {
    return report(app::kDomainError, e.what());
  } catch (const std::exception& e) {
    return report(app::kParseError, e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"Dispersion forces in planar magneto-electric structures"};
  cli.require_subcommand(1);

  std::string scenario, out;
  long points = 0;
  double tol = 0.0;
  const std::vector<std::string> commands = {
      "casimir-pressure", "cp-potential",         "cp-force",        "vdw-pair",
      "vdw-nbody",        "borderline",           "dynamics-resonant", "dynamics-offresonant",
      "dynamics-evolve",  "powerlaw-fit"};
  std::vector<CLI::App*> subs;
  for (const auto& c : commands) {
    CLI::App* s = cli.add_subcommand(c, "Run the " + c + " sweep of a scenario file");
    s->add_option("--scenario", scenario, "Scenario file or a previous output table")
        ->required();
    s->add_option("--out", out, "Write the table here instead of standard output");
    s->add_option("--points", points, "Override the number of sweep points")
        ->check(CLI::PositiveNumber);
    s->add_option("--tol", tol, "Override the relative tolerance")->check(CLI::PositiveNumber);
    subs.push_back(s);
  }
  CLI::App* validate = cli.add_subcommand("validate", "Check a scenario file and list diagnostics");
  validate->add_option("--scenario", scenario, "Scenario file")->required();

  std::string out_dir;
  int suite_points = 200;
  CLI::App* suite =
      cli.add_subcommand("reference-suite", "Regenerate the figure and table reference data");
  suite->add_option("--out-dir", out_dir, "Output directory")->required();
  suite->add_option("--points", suite_points, "Points per figure sweep")
      ->check(CLI::PositiveNumber);

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = cli.exit(e);
    return code == 0 ? 0 : app::kParseError;
  }

  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (!subs[i]->parsed()) continue;
    app::Overrides o;
    if (points > 0) o.points = points;
    if (tol > 0.0) o.tol = tol;
    return run_command(commands[i], scenario, out, o);
  }

  if (validate->parsed()) {
    try {
      const auto diags = app::validate_text(app::read_file(scenario));
      for (const auto& d : diags) std::cout << d.severity << ": " << d.message << '\n';
      if (diags.empty()) std::cout << "ok\n";
      return 0;
    } catch (const std::exception& e) {
      return report(app::kParseError, e.what());
    }
  }

  try {
    for (const auto& f : app::emit_reference_suite(out_dir, suite_points))
      std::cout << out_dir << '/' << f << '\n';
    return 0;
  } catch (const app::ParseError& e) {
    return report(app::kParseError, e.what());
  } catch (const dispersion::ConvergenceError& e) {
    return report(app::kNotConverged, e.what());
  } catch (const dispersion::DomainError& e) {
    return report(app::kDomainError, e.what());
  } catch (const std::exception& e) {
    return report(app::kDomainError, e.what());
  }
}
