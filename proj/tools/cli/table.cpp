#include "table.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace dispersion::app {

namespace {
constexpr double kHbar = 1.054571817e-34;  // J s
constexpr double kC = 299792458.0;         // m / s
}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific, 16);
  return std::string(buf, r.ptr);
}

double si_factor(Unit unit, double w) {
  if (!(w > 0.0)) return 1.0;
  const double length = kC / w;
  const double energy = kHbar * w;
  switch (unit) {
    case Unit::None: return 1.0;
    case Unit::Length: return length;
    case Unit::Energy: return energy;
    case Unit::Pressure: return energy / (length * length * length);
    case Unit::Force: return energy / length;
    case Unit::Frequency: return w;
    case Unit::Time: return 1.0 / w;
  }
  return 1.0;
}

std::string unit_label(Unit unit, bool si) {
  switch (unit) {
    case Unit::None: return "1";
    case Unit::Length: return si ? "m" : "c/omega_ref";
    case Unit::Energy: return si ? "J" : "hbar omega_ref";
    case Unit::Pressure: return si ? "Pa" : "hbar omega_ref^4/c^3";
    case Unit::Force: return si ? "N" : "hbar omega_ref^2/c";
    case Unit::Frequency: return si ? "rad/s" : "omega_ref";
    case Unit::Time: return si ? "s" : "1/omega_ref";
  }
  return "1";
}

std::string OutputTable::to_csv(double omega_ref_si) const {
  const bool si = omega_ref_si > 0.0;
  std::ostringstream out;
  out << "# dispersion 0.1.0\n";
  for (const auto& m : metadata) out << "# " << m << '\n';
  out << "# units: " << (si ? "SI" : "natural (hbar = c = eps0 = mu0 = 1)");
  for (const auto& c : columns) out << "; " << c.name << " [" << unit_label(c.unit, si) << ']';
  out << '\n';
  if (!scenario.empty()) {
    out << "# scenario:\n";
    std::istringstream sc(scenario);
    std::string line;
    while (std::getline(sc, line)) out << (line.empty() ? "#" : "# " + line) << '\n';
    out << "# end\n";
  }
  const bool labelled = !labels.empty();
  if (labelled) out << label_name << ',';
  for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i].name;
  out << ",flag\n";
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (labelled) out << labels[r] << ',';
    for (std::size_t i = 0; i < columns.size(); ++i)
      out << (i ? "," : "") << format_number(rows[r][i] * si_factor(columns[i].unit, omega_ref_si));
    out << ',' << flags[r] << '\n';
  }
  return out.str();
}

}  // namespace dispersion::app
