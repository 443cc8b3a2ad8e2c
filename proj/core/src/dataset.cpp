#include "roblev/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "roblev/error.hpp"

namespace roblev {

const Column* Dataset::find(const std::string& name) const {
  for (const auto& c : columns)
    if (c.name == name) return &c;
  return nullptr;
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

// Reads one CSV record. Returns false at end of input with nothing read.
bool read_record(std::istream& in, std::vector<std::string>& fields, std::size_t record_no,
                 const std::string& source) {
  fields.clear();
  std::string field;
  bool in_quotes = false;
  bool quoted = false;
  bool any = false;
  char c;
  while (in.get(c)) {
    any = true;
    if (in_quotes) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get();
          field += '"';
        } else {
          in_quotes = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"') {
      if (!trim(field).empty()) {
        throw DataError(source + ": stray quote in record " + std::to_string(record_no),
                        {record_no});
      }
      field.clear();
      in_quotes = true;
      quoted = true;
    } else if (c == ',') {
      fields.push_back(quoted ? field : trim(field));
      field.clear();
      quoted = false;
    } else if (c == '\n') {
      break;
    } else if (c == '\r') {
      if (in.peek() == '\n') in.get();
      break;
    } else {
      if (quoted && c != ' ' && c != '\t') {
        throw DataError(source + ": text after closing quote in record " +
                            std::to_string(record_no),
                        {record_no});
      }
      if (!quoted) field += c;
    }
  }
  if (in_quotes) {
    throw DataError(source + ": unterminated quoted field in record " + std::to_string(record_no),
                    {record_no});
  }
  if (!any) return false;
  fields.push_back(quoted ? field : trim(field));
  return true;
}

bool blank_record(const std::vector<std::string>& fields) {
  return fields.size() == 1 && fields[0].empty();
}

}  // namespace

bool is_missing_cell(const std::string& cell) {
  const auto t = trim(cell);
  return t.empty() || t == "NA";
}

std::optional<double> parse_number(const std::string& cell) {
  std::string t = trim(cell);
  if (t.empty()) return std::nullopt;
  std::string_view v = t;
  if (v.front() == '+') v.remove_prefix(1);
  if (v.empty()) return std::nullopt;
  // Decimal only: from_chars would otherwise accept "inf", "nan".
  if (!(std::isdigit(static_cast<unsigned char>(v.front())) || v.front() == '.' ||
        v.front() == '-')) {
    return std::nullopt;
  }
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out)) {
    return std::nullopt;
  }
  return out;
}

Dataset parse_csv(std::istream& in, const std::vector<std::string>& label_overrides,
                  std::string source) {
  Dataset ds;
  ds.source = std::move(source);

  std::vector<std::string> header;
  if (!read_record(in, header, 0, ds.source) || blank_record(header)) {
    throw DataError(ds.source + ": missing header row");
  }
  std::set<std::string> seen;
  for (std::size_t j = 0; j < header.size(); ++j) {
    if (header[j].empty()) {
      throw DataError(ds.source + ": empty column name in header (column " +
                      std::to_string(j + 1) + ")");
    }
    if (!seen.insert(header[j]).second) {
      throw DataError(ds.source + ": duplicate column name '" + header[j] + "'");
    }
    ds.columns.push_back(Column{header[j], ColumnKind::numeric, {}, {}, {}});
  }
  for (const auto& name : label_overrides) {
    if (!seen.count(name)) {
      throw DataError(ds.source + ": categorical override names unknown column '" + name + "'");
    }
  }

  std::vector<std::string> fields;
  std::size_t row = 0;
  while (read_record(in, fields, row + 1, ds.source)) {
    if (blank_record(fields) && header.size() != 1) continue;
    ++row;
    if (fields.size() != header.size()) {
      throw DataError(ds.source + ": row " + std::to_string(row) + " has " +
                          std::to_string(fields.size()) + " fields, expected " +
                          std::to_string(header.size()),
                      {row});
    }
    for (std::size_t j = 0; j < fields.size(); ++j) ds.columns[j].text.push_back(fields[j]);
  }
  ds.rows = row;
  if (ds.rows == 0) throw DataError(ds.source + ": no data rows");

  for (auto& col : ds.columns) {
    const bool forced = std::find(label_overrides.begin(), label_overrides.end(), col.name) !=
                        label_overrides.end();
    col.missing.resize(ds.rows);
    for (std::size_t i = 0; i < ds.rows; ++i) col.missing[i] = is_missing_cell(col.text[i]);

    bool numeric = !forced;
    std::vector<double> values(ds.rows, 0.0);
    for (std::size_t i = 0; numeric && i < ds.rows; ++i) {
      if (col.missing[i]) continue;
      if (auto v = parse_number(col.text[i])) {
        values[i] = *v;
      } else {
        numeric = false;
      }
    }
    col.kind = numeric ? ColumnKind::numeric : ColumnKind::label;
    if (numeric) col.values = std::move(values);
  }
  return ds;
}

void apply_label_overrides(Dataset& data, const std::vector<std::string>& names) {
  for (const auto& name : names) {
    auto it = std::find_if(data.columns.begin(), data.columns.end(),
                           [&](const Column& c) { return c.name == name; });
    if (it == data.columns.end()) {
      throw DataError(data.source + ": categorical override names unknown column '" + name + "'");
    }
    it->kind = ColumnKind::label;
    it->values.clear();
  }
}

Dataset ingest_csv(const std::string& path, const std::vector<std::string>& label_overrides) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open data file '" + path + "'");
  return parse_csv(in, label_overrides, path);
}

}  // namespace roblev
