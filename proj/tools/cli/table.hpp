#pragma once

#include <string>
#include <vector>

namespace dispersion::app {

enum class Unit { None, Length, Energy, Pressure, Force, Frequency, Time };

struct Column {
  std::string name;
  Unit unit = Unit::None;
};

struct OutputTable {
  std::vector<std::string> metadata;  // "key: value" lines
  std::string scenario;               // canonical scenario text
  std::vector<Column> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::string> flags;  // one per row
  // Optional leading text column.
  std::string label_name;
  std::vector<std::string> labels;

  // omega_ref_si > 0 converts every column to SI.
  std::string to_csv(double omega_ref_si = 0.0) const;
};

// Shortest round-trip independent rendering: 17 significant digits,
// scientific notation, '.' decimal point regardless of locale.
std::string format_number(double v);

double si_factor(Unit unit, double omega_ref_si);
std::string unit_label(Unit unit, bool si);

}  // namespace dispersion::app
