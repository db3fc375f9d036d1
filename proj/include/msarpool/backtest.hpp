#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "msarpool/evidence.hpp"
#include "msarpool/forecast.hpp"
#include "msarpool/optimize.hpp"
#include "msarpool/pool.hpp"
#include "msarpool/scenario.hpp"

namespace msarpool {

enum class Method {
  EqualWeights,
  EqualPriors,
  MaxMarginalLikelihood,
  OptimalWeightsLogScore,   // w1*
  OptimalPriorsLogScore,    // pi1*
  OptimalWeightsPit,        // w2*
  OptimalPriorsPit,         // pi2*
  ArRecursive,
  ArRolling,
};

const char* method_tag(Method m);
std::optional<Method> parse_method_tag(const std::string& tag);
std::vector<Method> all_methods();

// Recursive-window estimation / optimization / evaluation scheme. Estimation
// windows run [t0, t] for t in [T0, Tbar + h]; weights are chosen at each
// T_w in [T0+h+R-1, Tbar+h] from the trailing R forecasts and applied to the
// forecast targeting T_w + h, so the evaluation sample covers
// [T0+2h+R-1, Tbar+2h].
struct BacktestPlan {
  Quarter t0, T0, Tbar;
  int R = 40;
  int horizon = 1;
  std::vector<Method> methods;  // empty = all
  SamplerConfig sampler;
  EvidenceOptions evidence;
  OptimizerOptions optimizer;
  int rolling_width = 80;
  bool kernel_fit = false;
  bool flat_equal_weights = false;
  int jobs = 1;
  std::string cache_dir;  // empty disables the on-disk cache
  bool verbose = false;

  void validate() const;
  Quarter eval_start() const { return T0 + 2 * horizon + R - 1; }
  Quarter eval_end() const { return Tbar + 2 * horizon; }
  Quarter first_window_end() const { return T0; }
  Quarter last_window_end() const { return Tbar + horizon; }
};

struct PeriodMethodResult {
  double pit = 0.0;
  double log_score = 0.0;
  bool floored = false;
  double mean = 0.0;
  std::vector<double> percentiles;  // at EvaluationReport::percentile_levels
  std::vector<double> weights;      // over the catalogue; empty for AR rows
};

struct PeriodRecord {
  Quarter target;
  double realized = 0.0;
  std::map<Method, PeriodMethodResult> methods;
};

struct MethodStats {
  double apd = 0.0;
  double ks_statistic = 0.0;
  double ks_p_value = 0.0;
  double lb1_p_value = 0.0;
  double lb2_p_value = 0.0;
  int floored_scores = 0;
};

struct EvaluationReport {
  // plan echo
  Quarter t0, T0, Tbar;
  int R = 0, horizon = 0;
  std::uint64_t seed = 0;
  int rolling_width = 0;

  std::vector<int> view_ids;
  std::vector<bool> view_is_scenario;
  std::vector<int> view_num_regimes;
  std::vector<double> percentile_levels;
  std::vector<PeriodRecord> periods;  // the evaluation sample, in order
  std::map<Method, MethodStats> stats;

  const PeriodRecord& at(Quarter target) const;
};

EvaluationReport run_backtest(const TimeSeries& y, const ViewCatalogue& catalogue,
                              const BacktestPlan& plan);

struct ArScheme {
  bool rolling = false;
  int width = 80;
};

// Bayesian AR(5) benchmark: the K=1 diffuse view pushed through the same
// forecast pipeline, one forecast per origin in [first_origin, last_origin].
std::vector<ViewForecast> ar_benchmark(const TimeSeries& y, Quarter sample_start,
                                       Quarter first_origin, Quarter last_origin,
                                       int horizon, const ArScheme& scheme,
                                       const SamplerConfig& base_cfg);

}  // namespace msarpool
