#pragma once
// Diagnostics CSV: optional "# key=value" metadata lines, a header row, then
// one row per record. Floats use 17 significant digits; lines end in LF.

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "stratlab/records.hpp"

namespace stratlab {

using Metadata = std::vector<std::pair<std::string, std::string>>;

/// %.17g; round-trips every finite double.
std::string format_double(double v);

void write_metadata(std::ostream& os, const Metadata& meta);
void write_diagnostics_csv(std::ostream& os, const std::vector<DiagnosticsRecord>& records, const Metadata& meta = {});

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  Metadata meta;

  /// Throws std::out_of_range if the column is missing.
  std::vector<double> column(const std::string& name) const;
  bool has(const std::string& name) const;
};

/// Reads a numeric CSV. Lines starting with '#' are metadata (key=value) or
/// comments. A first row that does not parse as numbers is the header;
/// without one, columns are named c0, c1, ... Throws std::runtime_error with
/// the line number on ragged or non-numeric rows.
CsvTable read_csv(std::istream& is);
CsvTable read_csv_file(const std::string& path);

}  // namespace stratlab
