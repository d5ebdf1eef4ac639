#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <dispersion/error.hpp>

#include "commands.hpp"
#include "scenario.hpp"

using namespace dispersion::app;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "dispersion_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

void write(const fs::path& p, const std::string& text) {
  std::ofstream(p, std::ios::binary) << text;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(DISPERSION_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

const char* kHalfSpace = R"([run]
command = cp-potential
from = 0.5
to = 2
points = 3

[atom]
model = two-level
frequency = 1
alpha0 = 1

[material glass]
model = constant
epsilon = 2.25

[geometry]
kind = half-space
stack = glass
)";

}  // namespace

TEST(ScenarioParser, SectionsAndEntries) {
  const Document d = parse_document("# c\n[run]\ncommand = x ; trailing\n\n[material a]\nk=v\n");
  ASSERT_EQ(d.sections.size(), 2u);
  EXPECT_EQ(d.sections[1].kind, "material");
  EXPECT_EQ(d.sections[1].name, "a");
  ASSERT_NE(d.find("material", "a")->find("k"), nullptr);
  EXPECT_EQ(d.find("material", "a")->find("k")->value, "v");
}

TEST(ScenarioParser, ErrorsCarryPosition) {
  try {
    parse_document("[run]\ncommand = x\n  = 3\n");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
    EXPECT_GE(e.column(), 1);
  }
  EXPECT_THROW(parse_document("[run\n"), ParseError);
  EXPECT_THROW(parse_document("key = 1\n"), ParseError);
  EXPECT_THROW(parse_document("[run]\ncommand = a\ncommand = b\n"), ParseError);
}

TEST(ScenarioParser, TypedValues) {
  EXPECT_DOUBLE_EQ(as_double(Entry{"k", "1e-3", 1, 1}), 1e-3);
  EXPECT_TRUE(std::isinf(as_double(Entry{"k", "inf", 1, 1})));
  EXPECT_THROW(as_double(Entry{"k", "1.0x", 4, 7}), ParseError);
  EXPECT_EQ(as_integer(Entry{"k", "12", 1, 1}), 12);
  EXPECT_THROW(as_integer(Entry{"k", "1.5", 1, 1}), ParseError);
  EXPECT_TRUE(as_bool(Entry{"k", "true", 1, 1}));
  EXPECT_EQ(split_list(" a, b ,c", ',').size(), 3u);
}

TEST(ScenarioParser, CanonicalFormIsStable) {
  const Document d = parse_document(kHalfSpace);
  const std::string c = d.canonical();
  EXPECT_EQ(parse_document(c).canonical(), c);
}

TEST(Run, OutputRoundTripsItsScenario) {
  const RunOutcome first = run_document(parse_document(kHalfSpace));
  EXPECT_EQ(first.exit_code, kOk);
  const std::string csv = first.table.to_csv();
  const Document back = parse_scenario_text(csv);
  EXPECT_EQ(back.canonical(), parse_document(kHalfSpace).canonical());
  EXPECT_EQ(run_document(back).table.to_csv(), csv);
}

TEST(Run, Deterministic) {
  const Document d = parse_document(kHalfSpace);
  EXPECT_EQ(run_document(d).table.to_csv(), run_document(d).table.to_csv());
}

TEST(Run, OverridesApply) {
  Overrides o;
  o.points = 5;
  o.tol = 1e-6;
  const Document d = apply_overrides(parse_document(kHalfSpace), o);
  EXPECT_EQ(d.find("run")->find("points")->value, "5");
  EXPECT_EQ(run_document(d).table.rows.size(), 5u);
}

TEST(Run, UnresolvedMaterialIsParseError) {
  std::string text = kHalfSpace;
  text.replace(text.find("stack = glass"), 13, "stack = steel");
  try {
    run_document(parse_document(text));
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 18);
  }
}

TEST(Run, PhysicsViolationIsDomainError) {
  std::string text = kHalfSpace;
  text.replace(text.find("epsilon = 2.25"), 14, "epsilon = -2");
  EXPECT_THROW(run_document(parse_document(text)), dispersion::DomainError);
}

TEST(Validate, ReportsProblems) {
  EXPECT_TRUE(validate_text(kHalfSpace).empty());
  std::string text = kHalfSpace;
  text += "\n[bogus]\nx = 1\n";
  const auto diags = validate_text(text);
  ASSERT_FALSE(diags.empty());
  const std::string thin = R"([run]
command = cp-potential
from = 1
to = 2
points = 2

[atom]
model = two-level
frequency = 1
alpha0 = 1

[material glass]
model = constant
epsilon = 2.25

[geometry]
kind = thin-plate
material = glass
thickness = 1
)";
  bool warned = false;
  for (const auto& d : validate_text(thin)) warned = warned || d.severity == "warning";
  EXPECT_TRUE(warned);
}

TEST(Binary, ExitCodes) {
  const fs::path good = scratch("good.ini");
  write(good, kHalfSpace);
  EXPECT_EQ(run_cli("cp-potential --scenario " + good.string()), 0);

  const fs::path bad = scratch("bad.ini");
  write(bad, "[run]\ncommand = cp-potential\nfrom = \n");
  EXPECT_EQ(run_cli("cp-potential --scenario " + bad.string()), 1);
  EXPECT_EQ(run_cli("cp-potential --scenario " + scratch("missing.ini").string()), 1);

  std::string text = kHalfSpace;
  text.replace(text.find("alpha0 = 1"), 10, "alpha0 = -1");
  const fs::path domain = scratch("domain.ini");
  write(domain, text);
  EXPECT_EQ(run_cli("cp-potential --scenario " + domain.string()), 3);

  EXPECT_EQ(run_cli("cp-potential --scenario " + good.string() + " --tol 1e-17"), 2);
}

TEST(Binary, OutFileRoundTrip) {
  const fs::path in = scratch("rt.ini"), a = scratch("rt_a.csv"), b = scratch("rt_b.csv");
  write(in, kHalfSpace);
  ASSERT_EQ(run_cli("cp-potential --scenario " + in.string() + " --out " + a.string()), 0);
  ASSERT_EQ(run_cli("cp-potential --scenario " + a.string() + " --out " + b.string()), 0);
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_EQ(slurp(a).rfind("# dispersion", 0), 0u);
}

TEST(Binary, SampleScenariosRun) {
  for (const auto& entry : fs::directory_iterator(SCENARIO_DIR)) {
    if (entry.path().extension() != ".ini") continue;
    const Document d = parse_document(read_file(entry.path().string()));
    const std::string command = d.find("run")->find("command")->value;
    EXPECT_EQ(run_cli(command + " --scenario " + entry.path().string() + " --points 3"), 0)
        << entry.path();
  }
}

TEST(ReferenceSuite, WritesAllFiles) {
  const fs::path dir = scratch("reference");
  const auto files = emit_reference_suite(dir.string(), 8);
  EXPECT_EQ(files.size(), 7u);
  for (const auto& f : files) EXPECT_TRUE(fs::exists(dir / f)) << f;
}
