#include "msarpool/pool.hpp"

#include <algorithm>
#include <cmath>

#include "msarpool/errors.hpp"
#include "msarpool/mathutil.hpp"

namespace msarpool {

void EvidenceTable::add(Quarter origin, std::size_t view_index, double log_ml) {
  if (!std::isfinite(log_ml)) {
    throw validation_error("evidence for view " + std::to_string(view_index) + " at " +
                           origin.str() + " is not finite");
  }
  table_[{origin.index(), view_index}] = log_ml;
}

double EvidenceTable::at(Quarter origin, std::size_t view_index) const {
  auto it = table_.find({origin.index(), view_index});
  if (it == table_.end()) {
    throw validation_error("no evidence for view " + std::to_string(view_index) +
                           " at " + origin.str());
  }
  return it->second;
}

bool EvidenceTable::has(Quarter origin, std::size_t view_index) const {
  return table_.count({origin.index(), view_index}) > 0;
}

Eigen::VectorXd EvidenceTable::row(Quarter origin, std::size_t num_views) const {
  Eigen::VectorXd out(static_cast<long>(num_views));
  for (std::size_t i = 0; i < num_views; ++i) out[static_cast<long>(i)] = at(origin, i);
  return out;
}

ForecastDensity combine_fixed(const std::vector<ViewForecast>& forecasts,
                              const PoolWeights& weights) {
  if (forecasts.empty()) throw validation_error("no forecasts to combine");
  const Quarter origin = forecasts[0].origin_period;
  std::vector<const ForecastDensity*> parts;
  parts.reserve(forecasts.size());
  for (const auto& f : forecasts) {
    if (f.origin_period != origin) {
      throw validation_error("forecasts are not aligned on a common origin: " +
                             origin.str() + " vs " + f.origin_period.str());
    }
    parts.push_back(&f.density);
  }
  return flatten_mixture_of_mixtures(std::span<const ForecastDensity* const>(parts),
                                     weights);
}

PoolWeights posterior_probs(const PoolWeights& prior, const Eigen::VectorXd& log_ml) {
  if (static_cast<std::size_t>(log_ml.size()) != prior.size()) {
    throw validation_error("evidence length does not match the prior");
  }
  std::vector<double> logs(prior.size());
  for (std::size_t i = 0; i < prior.size(); ++i) {
    logs[i] = prior[i] > 0.0 ? std::log(prior[i]) + log_ml[static_cast<long>(i)]
                             : -std::numeric_limits<double>::infinity();
  }
  const double norm = log_sum_exp(logs);
  if (!std::isfinite(norm)) {
    throw validation_error("all prior mass sits on views with -inf evidence");
  }
  std::vector<double> post(prior.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < prior.size(); ++i) {
    post[i] = std::exp(logs[i] - norm);
    sum += post[i];
  }
  for (auto& v : post) v /= sum;
  return PoolWeights(std::move(post));
}

PoolWeights posterior_probs(const PoolWeights& prior, const EvidenceTable& evidence,
                            Quarter origin, std::size_t num_views) {
  return posterior_probs(prior, evidence.row(origin, num_views));
}

bool ForecastHistory::has_evidence() const {
  return !points.empty() && points.front().view_log_ml.size() > 0;
}

void ForecastHistory::validate() const {
  if (points.empty()) throw validation_error("empty forecast history");
  for (const auto& pt : points) {
    if (static_cast<std::size_t>(pt.view_log_pdf.size()) != num_views ||
        static_cast<std::size_t>(pt.view_cdf.size()) != num_views) {
      throw validation_error("history point at " + pt.target.str() +
                             " does not cover the catalogue");
    }
    if (!pt.view_log_pdf.allFinite() || !pt.view_cdf.allFinite()) {
      throw validation_error("missing or non-finite realization data at " +
                             pt.target.str());
    }
  }
}

namespace {

// Per-period weights: the prior itself, or the evidence-updated posterior.
PoolWeights period_weights(const PoolWeights& w, const HistoryPoint& pt, PoolMode mode) {
  if (mode == PoolMode::Weights) return w;
  if (pt.view_log_ml.size() == 0) {
    throw validation_error("prior-mode objective needs evidence for " + pt.target.str());
  }
  return posterior_probs(w, pt.view_log_ml);
}

}  // namespace

double objective_f1(const PoolWeights& w, const ForecastHistory& history, PoolMode mode) {
  history.validate();
  double total = 0.0;
  std::vector<double> logs(history.num_views);
  for (const auto& pt : history.points) {
    const PoolWeights pw = period_weights(w, pt, mode);
    for (std::size_t i = 0; i < history.num_views; ++i) {
      logs[i] = pw[i] > 0.0 ? std::log(pw[i]) + pt.view_log_pdf[static_cast<long>(i)]
                            : -std::numeric_limits<double>::infinity();
    }
    const double lp = log_sum_exp(logs);
    total += std::max(lp, kLogScoreFloor);
  }
  return total;
}

std::vector<double> pooled_pits(const PoolWeights& w, const ForecastHistory& history,
                                PoolMode mode) {
  history.validate();
  std::vector<double> pits;
  pits.reserve(history.points.size());
  for (const auto& pt : history.points) {
    const PoolWeights pw = period_weights(w, pt, mode);
    double u = 0.0;
    for (std::size_t i = 0; i < history.num_views; ++i) {
      u += pw[i] * pt.view_cdf[static_cast<long>(i)];
    }
    pits.push_back(std::clamp(u, 0.0, 1.0));
  }
  return pits;
}

double ks_statistic(std::vector<double> pits) {
  if (pits.empty()) throw validation_error("no PITs");
  std::sort(pits.begin(), pits.end());
  const auto n = static_cast<double>(pits.size());
  double d = 0.0;
  for (std::size_t i = 0; i < pits.size(); ++i) {
    const double hi = (static_cast<double>(i) + 1.0) / n - pits[i];
    const double lo = pits[i] - static_cast<double>(i) / n;
    d = std::max({d, hi, lo});
  }
  return d;
}

double objective_f2(const PoolWeights& w, const ForecastHistory& history, PoolMode mode) {
  return -ks_statistic(pooled_pits(w, history, mode));
}

}  // namespace msarpool
