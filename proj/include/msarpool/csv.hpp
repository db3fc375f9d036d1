#pragma once

#include <optional>
#include <string>
#include <vector>

#include "msarpool/time_series.hpp"

namespace msarpool {

// Minimal RFC-ish CSV: comma separated, optional double quotes, one header
// row. Quoted fields may contain commas; embedded quotes are doubled.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Column index by name; throws validation_error when absent.
  std::size_t column(const std::string& name) const;
};

CsvTable read_csv(const std::string& path);
std::vector<std::string> split_csv_line(const std::string& line);
std::string csv_quote(const std::string& field);

struct SeriesLoadOptions {
  std::string date_column = "DATE";   // name, or empty to use first column
  std::string value_column;           // name, or empty to use second column
  std::optional<Quarter> start;       // inclusive clip, applied after transform
  std::optional<Quarter> end;
  bool year_on_year = false;          // input is levels; transform to growth
};

// Parses a dated CSV into a validated quarterly series. Rows must be
// consecutive quarters; duplicates, gaps and unparsable dates name the
// offending row in the error.
TimeSeries load_series(const std::string& path, const SeriesLoadOptions& opts = {});

}  // namespace msarpool
