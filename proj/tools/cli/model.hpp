#pragma once

// Typed view of a scenario document. Every resolver reports problems as
// ParseError at the entry that caused them.

#include <map>
#include <string>
#include <vector>

#include <dispersion/casimir.hpp>
#include <dispersion/cp.hpp>
#include <dispersion/dynamics.hpp>
#include <dispersion/vdw.hpp>

#include "scenario.hpp"

namespace dispersion::app {

struct RunConfig {
  std::string command;
  double from = 0.0;
  double to = 0.0;
  long points = 0;
  bool log_spacing = true;
  double kT = 0.0;  // 0 means zero temperature
  double tol = 1e-8;
  ZeroFrequencyPrescription prescription = ZeroFrequencyPrescription::Drude;
  double omega_ref_si = 0.0;  // rad/s, optional
  bool si_output = false;
};

class Scenario {
 public:
  explicit Scenario(Document doc);

  const Document& document() const noexcept { return doc_; }
  const RunConfig& run() const noexcept { return run_; }

  MaterialModel material(const std::string& name, const Entry& where) const;
  // A [stack] of that name, or a material used as a half space.
  LayerStack stack(const std::string& name, const Entry& where) const;

  const Section& section(const std::string& kind, const std::string& name = {}) const;
  const Entry& entry(const Section& s, const std::string& key) const;
  double number(const Section& s, const std::string& key) const;
  double number_or(const Section& s, const std::string& key, double fallback) const;
  std::string text_or(const Section& s, const std::string& key,
                      const std::string& fallback) const;

  Polarizability polarizability(const Section& atom) const;
  Magnetizability magnetizability(const Section& atom) const;
  bool magnetic(const Section& atom) const;

  PlanarScenario planar() const;
  AtomScenario atom_scenario(double z) const;
  TwoLevelNearHalfSpace excited_atom(double omega10) const;
  QuasiMode quasi_mode() const;

 private:
  ResponseModel response(const Section& atom) const;
  MaterialModel build_material(const Section& s) const;

  Document doc_;
  RunConfig run_;
};

// Names of built-in materials usable without a [material] section.
bool builtin_material(const std::string& name);

}  // namespace dispersion::app
