#pragma once

// Minimal reader for the comma-separated files the tool consumes: one header
// row, no quoting, '#' comment lines ignored.

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace benford_qpt::cli {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<int> line_numbers;  ///< source line of each row, 1-based

  std::optional<std::size_t> column(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return i;
    }
    return std::nullopt;
  }
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string> split_fields(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.emplace_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

inline CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  CsvTable table;
  std::string line;
  int line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    if (!have_header) {
      table.header = split_fields(t);
      have_header = true;
      continue;
    }
    table.rows.push_back(split_fields(t));
    table.line_numbers.push_back(line_no);
  }
  if (!have_header) throw IoError("'" + path + "' has no header row");
  return table;
}

inline std::optional<double> parse_double(std::string_view s) {
  s = trim(s);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return value;
}

/// Numeric column; throws std::invalid_argument listing offending lines.
inline std::vector<double> numeric_column(const CsvTable& table, std::string_view name) {
  const auto idx = table.column(name);
  if (!idx) throw std::invalid_argument("column '" + std::string(name) + "' not found");
  std::vector<double> values;
  values.reserve(table.rows.size());
  std::ostringstream bad;
  int bad_count = 0;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const auto v = *idx < row.size() ? parse_double(row[*idx]) : std::nullopt;
    if (!v) {
      if (bad_count < 10) {
        bad << "\n  line " << table.line_numbers[r] << ": '"
            << (*idx < row.size() ? row[*idx] : std::string("<missing>")) << "'";
      }
      ++bad_count;
      continue;
    }
    values.push_back(*v);
  }
  if (bad_count > 0) {
    std::ostringstream msg;
    msg << bad_count << " non-numeric entr" << (bad_count == 1 ? "y" : "ies") << " in column '"
        << name << "':" << bad.str();
    throw std::invalid_argument(msg.str());
  }
  return values;
}

}  // namespace benford_qpt::cli
