#pragma once

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "error.hpp"

namespace missmass::io {

/// 17 significant digits: enough for any double to round-trip.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

using FieldValue = std::variant<double, std::uint64_t, std::string>;

/// A flat, ordered list of named fields; one record per CLI invocation.
class Record {
 public:
  Record& add(std::string name, FieldValue value) {
    fields_.emplace_back(std::move(name), std::move(value));
    return *this;
  }

  const auto& fields() const noexcept { return fields_; }

 private:
  std::vector<std::pair<std::string, FieldValue>> fields_;
};

namespace detail {

inline std::string render(const FieldValue& v, bool quote_strings) {
  if (const auto* d = std::get_if<double>(&v)) return format_double(*d);
  if (const auto* u = std::get_if<std::uint64_t>(&v)) return std::to_string(*u);
  const auto& s = std::get<std::string>(v);
  return quote_strings ? "\"" + s + "\"" : s;
}

}  // namespace detail

inline void write_json(std::ostream& out, const Record& rec) {
  out << '{';
  bool first = true;
  for (const auto& [name, value] : rec.fields()) {
    if (!first) out << ',';
    first = false;
    out << '"' << name << "\":" << detail::render(value, true);
  }
  out << "}\n";
}

inline void write_csv(std::ostream& out, const Record& rec) {
  std::string header, row;
  for (const auto& [name, value] : rec.fields()) {
    if (!header.empty()) header += ',', row += ',';
    header += name;
    row += detail::render(value, false);
  }
  out << header << '\n' << row << '\n';
}

/// Numeric CSV table with a header line, as emitted by the sweep/landscape commands.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

inline void write_table(std::ostream& out, const Table& table) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out << ',';
    out << table.columns[i];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << format_double(row[i]);
    }
    out << '\n';
  }
}

inline std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    parts.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

inline Table read_table(std::istream& in) {
  Table table;
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::kParse, "missing CSV header");
  for (const auto col : split_commas(line)) table.columns.emplace_back(col);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split_commas(line);
    if (cells.size() != table.columns.size()) {
      throw Error(ErrorCode::kParse, "CSV row has " + std::to_string(cells.size()) + " cells");
    }
    std::vector<double> row;
    for (const auto cell : cells) {
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (ec != std::errc{} || ptr != cell.data() + cell.size()) {
        throw Error(ErrorCode::kParse, "bad CSV cell '" + std::string(cell) + "'");
      }
      row.push_back(v);
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace missmass::io
