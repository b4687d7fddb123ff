#pragma once

// Flat tabular reports with table / CSV / JSON serializers. CSV is the
// golden-file format: one header line, comma separation, no quoting needed
// because cell text never contains commas. Reals are printed with 17
// significant digits in every format so parsing them back recovers the
// exact binary value.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <string>
#include <variant>
#include <vector>

namespace fibroots {

using Cell = std::variant<std::monostate, std::uint64_t, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

inline std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string cell_text(const Cell& c) {
  if (std::holds_alternative<std::monostate>(c)) return "";
  if (const auto* u = std::get_if<std::uint64_t>(&c)) return std::to_string(*u);
  if (const auto* d = std::get_if<double>(&c)) return format_real(*d);
  return std::get<std::string>(c);
}

inline std::string to_csv(const Table& t) {
  std::string out;
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    if (i) out += ',';
    out += t.columns[i];
  }
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += cell_text(row[i]);
    }
    out += '\n';
  }
  return out;
}

namespace detail {

inline void json_escape_into(std::string& out, const std::string& s) {
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += ch;
    }
  }
}

}  // namespace detail

// Array of objects mirroring the CSV fields; absent values become null.
inline std::string to_json(const Table& t) {
  std::string out = "[";
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    out += r ? ",\n {" : "\n {";
    const auto& row = t.rows[r];
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ", ";
      out += '"';
      detail::json_escape_into(out, t.columns[i]);
      out += "\": ";
      if (std::holds_alternative<std::monostate>(row[i])) {
        out += "null";
      } else if (const auto* s = std::get_if<std::string>(&row[i])) {
        out += '"';
        detail::json_escape_into(out, *s);
        out += '"';
      } else {
        out += cell_text(row[i]);
      }
    }
    out += '}';
  }
  out += "\n]\n";
  return out;
}

inline std::string to_text(const Table& t) {
  std::vector<std::size_t> widths(t.columns.size());
  for (std::size_t i = 0; i < t.columns.size(); ++i) widths[i] = t.columns[i].size();
  std::vector<std::vector<std::string>> cells;
  cells.reserve(t.rows.size());
  for (const auto& row : t.rows) {
    std::vector<std::string> line;
    line.reserve(row.size());
    for (std::size_t i = 0; i < row.size(); ++i) {
      line.push_back(cell_text(row[i]));
      widths[i] = std::max(widths[i], line.back().size());
    }
    cells.push_back(std::move(line));
  }
  std::string out;
  auto emit = [&](const std::vector<std::string>& line) {
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (i) out += "  ";
      out += line[i];
      out.append(widths[i] - line[i].size(), ' ');
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    out += '\n';
  };
  emit(t.columns);
  for (const auto& line : cells) emit(line);
  return out;
}

}  // namespace fibroots
