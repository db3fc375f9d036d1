#pragma once

#include <string>

#include "msarpool/backtest.hpp"

namespace msarpool {

// Full-fidelity machine-readable results (doubles round-trip exactly).
void save_report_json(const EvaluationReport& report, const std::string& path);
EvaluationReport load_report_json(const std::string& path);

// summary.csv, pits.csv, weights.csv and one fan_<method>.csv per method.
void write_report_csvs(const EvaluationReport& report, const std::string& outdir);

// SVG fan chart, stacked-area weight charts with the cumulative
// scenario-view series, and a PIT histogram; also refreshes the CSVs they
// are drawn from.
void emit_plots(const EvaluationReport& report, const std::string& outdir,
                const std::string& fan_method = "pi2*");

// Method tags are used in file names; '*' becomes "star".
std::string sanitize_tag(const std::string& tag);

}  // namespace msarpool
