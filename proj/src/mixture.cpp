#include "msarpool/mixture.hpp"

#include <algorithm>
#include <cmath>

#include "msarpool/errors.hpp"
#include "msarpool/mathutil.hpp"
#include "msarpool/rng.hpp"

namespace msarpool {

ForecastDensity::ForecastDensity(std::vector<NormalComponent> components,
                                 Quarter target_period)
    : components_(std::move(components)), target_(target_period) {
  if (components_.empty()) throw validation_error("mixture must have components");
  double wsum = 0.0;
  for (const auto& c : components_) {
    if (!std::isfinite(c.mean) || !std::isfinite(c.variance) || !std::isfinite(c.weight)) {
      throw validation_error("non-finite mixture component");
    }
    if (c.variance <= 0.0) throw validation_error("component variance must be > 0");
    if (c.weight < 0.0) throw validation_error("component weight must be >= 0");
    wsum += c.weight;
  }
  if (std::fabs(wsum - 1.0) > kWeightSumTol) {
    throw validation_error("mixture weights sum to " + std::to_string(wsum) +
                           ", expected 1");
  }
}

double ForecastDensity::pdf(double y) const {
  double p = 0.0;
  for (const auto& c : components_) {
    if (c.weight == 0.0) continue;
    p += c.weight * normal_pdf(y, c.mean, c.variance);
  }
  return p;
}

double ForecastDensity::log_pdf(double y) const {
  // Summed in log space so far-tail evaluations do not flush to zero.
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& c : components_) {
    if (c.weight == 0.0) continue;
    m = std::max(m, std::log(c.weight) + log_normal_pdf(y, c.mean, c.variance));
  }
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (const auto& c : components_) {
    if (c.weight == 0.0) continue;
    s += std::exp(std::log(c.weight) + log_normal_pdf(y, c.mean, c.variance) - m);
  }
  return m + std::log(s);
}

double ForecastDensity::cdf(double y) const {
  double p = 0.0;
  for (const auto& c : components_) {
    if (c.weight == 0.0) continue;
    p += c.weight * normal_cdf(y, c.mean, c.variance);
  }
  return std::clamp(p, 0.0, 1.0);
}

double ForecastDensity::mean() const {
  double m = 0.0;
  for (const auto& c : components_) m += c.weight * c.mean;
  return m;
}

std::pair<double, double> ForecastDensity::support_bounds() const {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto& c : components_) {
    if (c.weight == 0.0) continue;
    const double sd = std::sqrt(c.variance);
    lo = std::min(lo, c.mean - 10.0 * sd);
    hi = std::max(hi, c.mean + 10.0 * sd);
  }
  return {lo, hi};
}

double ForecastDensity::quantile(double prob) const {
  if (prob <= 0.0 || prob >= 1.0) {
    throw validation_error("quantile probability must be in (0,1)");
  }
  auto [lo, hi] = support_bounds();
  // Widen until the bracket certainly contains the quantile.
  while (cdf(lo) > prob) lo -= (hi - lo);
  while (cdf(hi) < prob) hi += (hi - lo);
  for (int it = 0; it < 200 && hi - lo > 1e-10 * (1.0 + std::fabs(lo)); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (cdf(mid) < prob) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

double ForecastDensity::sample(Rng& rng) const {
  std::vector<double> w(components_.size());
  for (std::size_t i = 0; i < components_.size(); ++i) w[i] = components_[i].weight;
  const auto& c = components_[rng.categorical(w)];
  return c.mean + std::sqrt(c.variance) * rng.normal();
}

PoolWeights::PoolWeights(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw validation_error("weights must be nonempty");
  double sum = 0.0;
  for (double v : values_) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw validation_error("weights must be finite and >= 0");
    }
    sum += v;
  }
  if (std::fabs(sum - 1.0) > kSumTol) {
    throw validation_error("weights sum to " + std::to_string(sum) + ", expected 1");
  }
}

PoolWeights PoolWeights::uniform(std::size_t n) {
  if (n == 0) throw validation_error("empty weight vector");
  return PoolWeights(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

PoolWeights PoolWeights::unit(std::size_t n, std::size_t index) {
  if (index >= n) throw validation_error("unit weight index out of range");
  std::vector<double> v(n, 0.0);
  v[index] = 1.0;
  return PoolWeights(std::move(v));
}

ForecastDensity flatten_mixture_of_mixtures(
    std::span<const ForecastDensity* const> parts, const PoolWeights& outer) {
  if (parts.empty()) throw validation_error("no densities to flatten");
  if (parts.size() != outer.size()) {
    throw validation_error("outer weight length does not match part count");
  }
  const Quarter target = parts[0]->target_period();
  std::size_t total = 0;
  for (const auto* p : parts) {
    if (p->target_period() != target) {
      throw validation_error("mismatched target periods: " + target.str() + " vs " +
                             p->target_period().str());
    }
    total += p->components().size();
  }
  std::vector<NormalComponent> merged;
  merged.reserve(total);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (const auto& c : parts[i]->components()) {
      merged.push_back({c.mean, c.variance, c.weight * outer[i]});
    }
  }
  // Renormalize away accumulated rounding so the invariant holds exactly.
  double wsum = 0.0;
  for (const auto& c : merged) wsum += c.weight;
  for (auto& c : merged) c.weight /= wsum;
  return ForecastDensity(std::move(merged), target);
}

ForecastDensity flatten_mixture_of_mixtures(const std::vector<ForecastDensity>& parts,
                                            const PoolWeights& outer) {
  std::vector<const ForecastDensity*> ptrs;
  ptrs.reserve(parts.size());
  for (const auto& p : parts) ptrs.push_back(&p);
  return flatten_mixture_of_mixtures(std::span<const ForecastDensity* const>(ptrs), outer);
}

}  // namespace msarpool
