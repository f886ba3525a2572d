#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hcr/envelope_builders.hpp"

namespace hcr {

/// Shortest round-trip text for a double: 17 significant digits, "nan"/"inf" spelled out.
std::string format_number(double v);

/// Number of leading decimals on which a and b agree when both are truncated.
int agreeing_decimals(double a, double b);

/// In-memory CSV; rendering quotes cells that need it and ends every record with LF.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row);
  std::string to_string() const;
};

/// Bracket error of the two shooting solutions for (10, 0.3), (55, 0.1), (30, 0.7).
CsvTable table_bracket_error(std::size_t steps);
/// Gamma approximation of the limiting problem against its closed-form upper envelope.
CsvTable table_limit_gamma(std::size_t steps);
/// Seeded exponents rho = 2.84 and rho = 2.8 and their terminal values for b = 10 .. 1e10.
CsvTable table_limit_seeds(std::size_t steps);
/// Global and partial band widths against the shooting oracle.
CsvTable table_band_widths(std::size_t oracle_steps, const BuildOptions& opt);
/// Partial band at b = 500, t = 0.1 next to the hot end, in the u scale.
CsvTable table_precision(const BuildOptions& opt);

struct ReportFile {
  std::string name;
  CsvTable table;
};

/// All report tables; rows are computed concurrently, the returned order is fixed.
std::vector<ReportFile> build_report(std::size_t steps, std::size_t oracle_steps, const BuildOptions& opt);

/// Writes each table to `<dir>/<name>.csv`, creating the directory if needed.
void write_report(const std::string& dir, const std::vector<ReportFile>& files);

}  // namespace hcr
