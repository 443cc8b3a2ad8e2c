#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <vector>

namespace roblev {

enum class ColumnKind { numeric, label };

struct Column {
  std::string name;
  ColumnKind kind = ColumnKind::numeric;
  std::vector<std::string> text;   // raw cell text, trimmed
  std::vector<double> values;      // parsed numbers; numeric columns only, 0 where missing
  std::vector<bool> missing;

  bool is_missing(std::size_t row) const { return missing[row]; }
};

// Rectangular table with unique column names.
struct Dataset {
  std::vector<Column> columns;
  std::size_t rows = 0;
  std::string source;

  const Column* find(const std::string& name) const;
};

// A cell is missing when it is empty or "NA" after trimming.
bool is_missing_cell(const std::string& cell);

// Parse a decimal number occupying the whole (trimmed) cell.
std::optional<double> parse_number(const std::string& cell);

// RFC-4180 style CSV: header row required, double-quoted fields with ""
// escapes, LF or CRLF records. A column is numeric iff every non-missing
// cell parses as a number; names listed in `label_overrides` are forced to
// label kind. Ragged records are reported by 1-based data row.
Dataset parse_csv(std::istream& in, const std::vector<std::string>& label_overrides = {},
                  std::string source = "<stream>");

// Force the named columns to label kind. Throws DataError for unknown names.
void apply_label_overrides(Dataset& data, const std::vector<std::string>& names);

Dataset ingest_csv(const std::string& path, const std::vector<std::string>& label_overrides = {});

}  // namespace roblev
