#pragma once

#include <map>
#include <string>
#include <vector>

#include "msarpool/time_series.hpp"
#include "msarpool/view.hpp"

namespace msarpool {

enum class Scenario { Baseline, Adverse, SeverelyAdverse };

// Supervisory stress-test GDP paths (annualized quarter-on-quarter growth,
// percent), one per (test year, scenario).
class ScenarioTable {
 public:
  void add(int test_year, Scenario s, TimeSeries path);
  const TimeSeries& path(int test_year, Scenario s) const;
  std::vector<int> test_years() const;

  // Every (year, scenario) present must span at least 8 quarters.
  void validate() const;

  static ScenarioTable from_csv(const std::string& path);

 private:
  std::map<std::pair<int, int>, TimeSeries> paths_;
};

// Builds a K=3 and a K=5 view per stress-test year. Regime intercept prior
// means are chosen so the implied AR unconditional mean matches the scenario:
// the last 4 baseline quarters (normal times), the first 4 quarters of the
// adverse / severely adverse paths (downturns), and for K=5 additionally the
// last 4 quarters of those paths (recoveries). Intercept and AR prior
// variances are set to tight_var. Ordering matches the catalogue convention:
// all K=3 views by year, then all K=5 views by year.
std::vector<ViewSpec> build_fed_views(const ScenarioTable& table,
                                      const std::vector<double>& ar_prior_mean,
                                      double tight_var = 1e-5, int first_id = 6);

// The 13-view catalogue used throughout: 5 vague views plus the 8
// scenario-derived views built from the bundled stress-test table.
ViewCatalogue paper_catalogue(const ScenarioTable& table);

}  // namespace msarpool
