#pragma once

#include <optional>
#include <string>
#include <vector>

#include "scenario.hpp"
#include "table.hpp"

namespace dispersion::app {

enum ExitCode { kOk = 0, kParseError = 1, kNotConverged = 2, kDomainError = 3 };

struct Overrides {
  std::optional<long> points;
  std::optional<double> tol;
  std::optional<std::string> command;
};

struct RunOutcome {
  OutputTable table;
  int exit_code = kOk;
  double omega_ref_si = 0.0;  // non-zero when SI output was requested
};

// Applies command-line overrides to the [run] section.
Document apply_overrides(Document doc, const Overrides& overrides);

// Throws ParseError for unresolved or malformed input and DomainError for
// physics-domain violations. Non-convergence is reported through row flags
// and exit code 2.
RunOutcome run_document(const Document& doc);

struct Diagnostic {
  std::string severity;  // "error" or "warning"
  std::string message;
};

std::vector<Diagnostic> validate_text(const std::string& text);

// Writes the figure and table reference data into `directory`; returns the
// file names written.
std::vector<std::string> emit_reference_suite(const std::string& directory, int points = 200);

}  // namespace dispersion::app
