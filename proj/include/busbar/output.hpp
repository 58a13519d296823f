#ifndef BUSBAR_OUTPUT_HPP
#define BUSBAR_OUTPUT_HPP

// Tabular output. CSV: header row, comma delimiter, LF line endings, numbers
// in scientific notation with 9 significant digits. JSON: the same rows plus a
// metadata object. Both are byte-stable for identical inputs.

#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "busbar/errors.hpp"

namespace busbar {

enum class OutputFormat { csv, json };

struct OutputSpec {
  OutputFormat format = OutputFormat::csv;
  std::string path;  ///< empty: standard output
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  nlohmann::ordered_json metadata = nlohmann::ordered_json::object();
};

inline std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.8e", v);
  return buf;
}

inline void write_csv(const Table& table, std::ostream& os) {
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) os << ',';
    os << table.columns[c];
  }
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) os << ',';
      os << format_number(row[c]);
    }
    os << '\n';
  }
}

/// Row values are rounded to the CSV's 9 significant digits so both formats
/// carry the same numbers.
inline void write_json(const Table& table, std::ostream& os) {
  nlohmann::ordered_json doc;
  doc["metadata"] = table.metadata;
  doc["columns"] = table.columns;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    auto r = nlohmann::ordered_json::array();
    for (double v : row) r.push_back(std::stod(format_number(v)));
    rows.push_back(std::move(r));
  }
  doc["rows"] = std::move(rows);
  os << doc.dump(2) << '\n';
}

inline void write_table(const Table& table, OutputFormat format, std::ostream& os) {
  if (format == OutputFormat::csv) {
    write_csv(table, os);
  } else {
    write_json(table, os);
  }
}

/// Writes to spec.path, or to `fallback` when the path is empty.
inline void emit(const Table& table, const OutputSpec& spec, std::ostream& fallback) {
  if (spec.path.empty()) {
    write_table(table, spec.format, fallback);
    fallback.flush();
    return;
  }
  std::ofstream file(spec.path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open output file '" + spec.path + "' for writing");
  write_table(table, spec.format, file);
  file.flush();
  if (!file) throw IoError("failed writing output file '" + spec.path + "'");
}

}  // namespace busbar

#endif  // BUSBAR_OUTPUT_HPP
