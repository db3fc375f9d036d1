#include "msarpool/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "msarpool/csv.hpp"
#include "msarpool/errors.hpp"

namespace msarpool {

namespace {

Scenario parse_scenario(const std::string& s) {
  if (s == "baseline" || s == "base") return Scenario::Baseline;
  if (s == "adverse" || s == "adv") return Scenario::Adverse;
  if (s == "severely_adverse" || s == "severe" || s == "sev") {
    return Scenario::SeverelyAdverse;
  }
  throw validation_error("unknown scenario '" + s + "'");
}

double mean_of(std::span<const double> v, std::size_t from, std::size_t count) {
  double s = 0.0;
  for (std::size_t i = 0; i < count; ++i) s += v[from + i];
  return s / static_cast<double>(count);
}

double head_mean4(const TimeSeries& ts) { return mean_of(ts.values(), 0, 4); }
double tail_mean4(const TimeSeries& ts) { return mean_of(ts.values(), ts.size() - 4, 4); }

}  // namespace

void ScenarioTable::add(int test_year, Scenario s, TimeSeries path) {
  paths_.insert_or_assign({test_year, static_cast<int>(s)}, std::move(path));
}

const TimeSeries& ScenarioTable::path(int test_year, Scenario s) const {
  auto it = paths_.find({test_year, static_cast<int>(s)});
  if (it == paths_.end()) {
    throw validation_error("no scenario path for test year " + std::to_string(test_year));
  }
  return it->second;
}

std::vector<int> ScenarioTable::test_years() const {
  std::vector<int> years;
  for (const auto& [key, _] : paths_) {
    if (years.empty() || years.back() != key.first) years.push_back(key.first);
  }
  return years;
}

void ScenarioTable::validate() const {
  if (paths_.empty()) throw validation_error("scenario table is empty");
  for (const auto& [key, path] : paths_) {
    if (path.size() < 8) {
      throw validation_error("scenario path for test year " + std::to_string(key.first) +
                             " has fewer than 8 quarters");
    }
  }
  for (int year : test_years()) {
    for (Scenario s : {Scenario::Baseline, Scenario::Adverse, Scenario::SeverelyAdverse}) {
      path(year, s);  // throws when a leg is missing
    }
  }
}

ScenarioTable ScenarioTable::from_csv(const std::string& file) {
  const CsvTable csv = read_csv(file);
  const std::size_t year_col = csv.column("test_year");
  const std::size_t scen_col = csv.column("scenario");
  const std::size_t period_col = csv.column("period");
  const std::size_t value_col = csv.column("growth");

  // Group rows, keeping each (year, scenario) block in file order.
  struct Block {
    Quarter start;
    std::vector<double> values;
  };
  std::map<std::pair<int, int>, Block> blocks;
  for (std::size_t r = 0; r < csv.rows.size(); ++r) {
    const auto& row = csv.rows[r];
    if (row.size() <= std::max({year_col, scen_col, period_col, value_col})) {
      throw validation_error("short row " + std::to_string(r + 2) + " in '" + file + "'");
    }
    const int year = std::stoi(row[year_col]);
    const Scenario s = parse_scenario(row[scen_col]);
    const Quarter q = Quarter::parse(row[period_col]);
    const double v = std::stod(row[value_col]);
    auto& block = blocks[{year, static_cast<int>(s)}];
    if (block.values.empty()) {
      block.start = q;
    } else if (q - block.start != static_cast<int>(block.values.size())) {
      throw validation_error("non-contiguous scenario quarters at row " +
                             std::to_string(r + 2) + " of '" + file + "'");
    }
    block.values.push_back(v);
  }

  ScenarioTable table;
  for (auto& [key, block] : blocks) {
    table.add(key.first, static_cast<Scenario>(key.second),
              TimeSeries(block.start, std::move(block.values)));
  }
  table.validate();
  return table;
}

std::vector<ViewSpec> build_fed_views(const ScenarioTable& table,
                                      const std::vector<double>& ar_prior_mean,
                                      double tight_var, int first_id) {
  table.validate();
  const double ar_sum = std::accumulate(ar_prior_mean.begin(), ar_prior_mean.end(), 0.0);
  if (std::fabs(1.0 - ar_sum) < 1e-12) {
    throw validation_error("AR prior means sum to 1; unconditional mean undefined");
  }
  const double shrink = 1.0 - ar_sum;  // b0 = target mean * (1 - sum a0)
  if (!(tight_var > 0.0)) throw validation_error("tight_var must be > 0");

  auto make_view = [&](int year, const std::vector<double>& regime_means) {
    ViewSpec v;
    v.kind = ViewSpec::Kind::Scenario;
    v.num_regimes = static_cast<int>(regime_means.size());
    v.lag_order = static_cast<int>(ar_prior_mean.size());
    for (double m : regime_means) v.intercept_mean.push_back(m * shrink);
    v.intercept_variance.assign(regime_means.size(), tight_var);
    v.ar_mean = ar_prior_mean;
    v.ar_variance.assign(ar_prior_mean.size(), tight_var);
    v.sigma_shape = 3.0;
    v.c0_shape = 0.5;
    v.c0_rate = 0.5;
    const int k = v.num_regimes;
    v.dirichlet.assign(k, std::vector<double>(k, k > 1 ? 1.0 / (k - 1) : 2.0));
    for (int i = 0; i < k; ++i) v.dirichlet[i][i] = 2.0;
    (void)year;
    return v;
  };

  std::vector<ViewSpec> views;
  const auto years = table.test_years();
  for (int year : years) {
    for (Scenario s : {Scenario::Baseline, Scenario::Adverse, Scenario::SeverelyAdverse}) {
      if (table.path(year, s).size() < 4) {
        throw validation_error("scenario shorter than 4 quarters for test year " +
                               std::to_string(year));
      }
    }
    const double normal_times = tail_mean4(table.path(year, Scenario::Baseline));
    const double adverse = head_mean4(table.path(year, Scenario::Adverse));
    const double severe = head_mean4(table.path(year, Scenario::SeverelyAdverse));
    views.push_back(make_view(year, {normal_times, adverse, severe}));
  }
  for (int year : years) {
    const double normal_times = tail_mean4(table.path(year, Scenario::Baseline));
    const double adverse = head_mean4(table.path(year, Scenario::Adverse));
    const double severe = head_mean4(table.path(year, Scenario::SeverelyAdverse));
    const double adverse_recovery = tail_mean4(table.path(year, Scenario::Adverse));
    const double severe_recovery = tail_mean4(table.path(year, Scenario::SeverelyAdverse));
    views.push_back(
        make_view(year, {severe_recovery, adverse_recovery, normal_times, adverse, severe}));
  }
  for (std::size_t i = 0; i < views.size(); ++i) {
    views[i].id = first_id + static_cast<int>(i);
  }
  return views;
}

ViewCatalogue paper_catalogue(const ScenarioTable& table) {
  std::vector<ViewSpec> views = build_vague_views(5);
  std::vector<double> a0 = {0.9, 0.0, 0.0, 0.0, 0.0};
  for (auto& v : build_fed_views(table, a0, 1e-5, 6)) views.push_back(std::move(v));
  return ViewCatalogue(std::move(views));
}

}  // namespace msarpool
