#pragma once

#include <Eigen/Dense>
#include <map>
#include <vector>

#include "msarpool/forecast.hpp"
#include "msarpool/mixture.hpp"
#include "msarpool/view.hpp"

namespace msarpool {

// log marginal likelihood per (view index, forecast-origin period).
class EvidenceTable {
 public:
  void add(Quarter origin, std::size_t view_index, double log_ml);
  double at(Quarter origin, std::size_t view_index) const;
  bool has(Quarter origin, std::size_t view_index) const;

  // All views present for the origin, as a dense vector.
  Eigen::VectorXd row(Quarter origin, std::size_t num_views) const;

 private:
  std::map<std::pair<int, std::size_t>, double> table_;
};

// Linear pool of aligned view forecasts with fixed weights.
ForecastDensity combine_fixed(const std::vector<ViewForecast>& forecasts,
                              const PoolWeights& weights);

// pi_i proportional to exp(logML_i) * prior_i, normalized by log-sum-exp.
PoolWeights posterior_probs(const PoolWeights& prior, const Eigen::VectorXd& log_ml);
PoolWeights posterior_probs(const PoolWeights& prior, const EvidenceTable& evidence,
                            Quarter origin, std::size_t num_views);

// Aligned per-period oracle values for the optimization window: log view
// densities and view CDFs at the realization, plus (for prior mode) the view
// evidence at each period's forecast origin.
struct HistoryPoint {
  Quarter target;
  Eigen::VectorXd view_log_pdf;
  Eigen::VectorXd view_cdf;
  Eigen::VectorXd view_log_ml;  // empty when no evidence is attached
};

struct ForecastHistory {
  std::size_t num_views = 0;
  std::vector<HistoryPoint> points;

  bool has_evidence() const;
  void validate() const;
};

enum class PoolMode { Weights, Prior };

// Sum of log pooled densities over the window. In prior mode the per-period
// weights are the view posteriors given that period's evidence, so the
// probabilities update as data accrue.
double objective_f1(const PoolWeights& w, const ForecastHistory& history, PoolMode mode);

// Negative two-sided Kolmogorov-Smirnov statistic of the window's pooled
// PITs against Uniform(0,1).
double objective_f2(const PoolWeights& w, const ForecastHistory& history, PoolMode mode);

// The empirical KS statistic max_i max(i/n - u_(i), u_(i) - (i-1)/n).
double ks_statistic(std::vector<double> pits);

// Per-period pooled PITs for the history under the given weights/prior.
std::vector<double> pooled_pits(const PoolWeights& w, const ForecastHistory& history,
                                PoolMode mode);

}  // namespace msarpool
