#include "msarpool/csv.hpp"

#include <cstdlib>
#include <fstream>

#include "msarpool/errors.hpp"

namespace msarpool {

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw validation_error("column '" + name + "' not found in CSV header");
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  fields.push_back(cur);
  return fields;
}

std::string csv_quote(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open CSV file '" + path + "'");
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) throw validation_error("empty CSV file '" + path + "'");
  table.header = split_csv_line(line);
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    table.rows.push_back(split_csv_line(line));
  }
  return table;
}

namespace {

double parse_number(const std::string& text, std::size_t row_no, const std::string& path) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0') {
    throw validation_error("unparsable value '" + text + "' at row " +
                           std::to_string(row_no) + " of '" + path + "'");
  }
  return v;
}

}  // namespace

TimeSeries load_series(const std::string& path, const SeriesLoadOptions& opts) {
  const CsvTable table = read_csv(path);
  if (table.header.size() < 2) {
    throw validation_error("'" + path + "': need a date column and a value column");
  }
  const std::size_t date_col =
      opts.date_column.empty() ? 0 : table.column(opts.date_column);
  const std::size_t value_col =
      opts.value_column.empty() ? (date_col == 0 ? 1 : 0) : table.column(opts.value_column);

  std::vector<double> values;
  Quarter start;
  bool first = true;
  Quarter prev;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const std::size_t row_no = r + 2;  // 1-based, after the header
    const auto& row = table.rows[r];
    if (row.size() <= std::max(date_col, value_col)) {
      throw validation_error("short row " + std::to_string(row_no) + " in '" + path + "'");
    }
    Quarter q;
    try {
      q = Quarter::parse(row[date_col]);
    } catch (const validation_error& e) {
      throw validation_error(std::string(e.what()) + " at row " + std::to_string(row_no) +
                             " of '" + path + "'");
    }
    if (first) {
      start = q;
      first = false;
    } else {
      if (q == prev) {
        throw validation_error("duplicate date " + q.str() + " at row " +
                               std::to_string(row_no) + " of '" + path + "'");
      }
      if (q - prev != 1) {
        throw validation_error("non-quarterly spacing before row " +
                               std::to_string(row_no) + " of '" + path + "' (" +
                               prev.str() + " -> " + q.str() + ")");
      }
    }
    prev = q;
    values.push_back(parse_number(row[value_col], row_no, path));
  }
  if (values.empty()) throw validation_error("no data rows in '" + path + "'");

  TimeSeries series(start, std::move(values));
  if (opts.year_on_year) series = year_on_year_growth(series);
  if (opts.start || opts.end) {
    const Quarter from = opts.start.value_or(series.start_period());
    const Quarter to = opts.end.value_or(series.last_period());
    series = series.window(from, to);
  }
  return series;
}

}  // namespace msarpool
