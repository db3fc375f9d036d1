#pragma once

#include <span>
#include <utility>
#include <vector>

#include "msarpool/quarter.hpp"

namespace msarpool {

class Rng;

struct NormalComponent {
  double mean = 0.0;
  double variance = 1.0;
  double weight = 1.0;
};

// Finite mixture of normals representing a one-period predictive density.
// Weights must lie on the simplex within 1e-10; immutable after construction.
class ForecastDensity {
 public:
  static constexpr double kWeightSumTol = 1e-10;

  ForecastDensity(std::vector<NormalComponent> components, Quarter target_period);

  const std::vector<NormalComponent>& components() const { return components_; }
  Quarter target_period() const { return target_; }

  double pdf(double y) const;
  double log_pdf(double y) const;
  double cdf(double y) const;
  double mean() const;
  double quantile(double prob) const;
  double sample(Rng& rng) const;

  // Support bounds used for quantile bracketing: min/max of mean +- 10 sd.
  std::pair<double, double> support_bounds() const;

 private:
  std::vector<NormalComponent> components_;
  Quarter target_;
};

// Simplex weights over a view catalogue (combination weights or prior
// probabilities, depending on use).
class PoolWeights {
 public:
  static constexpr double kSumTol = 1e-10;

  explicit PoolWeights(std::vector<double> values);
  static PoolWeights uniform(std::size_t n);
  static PoolWeights unit(std::size_t n, std::size_t index);

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const { return values_; }

 private:
  std::vector<double> values_;
};

// Concatenates the component lists of the parts, each rescaled by its outer
// weight. All parts must share a target period.
ForecastDensity flatten_mixture_of_mixtures(
    std::span<const ForecastDensity* const> parts, const PoolWeights& outer);

ForecastDensity flatten_mixture_of_mixtures(
    const std::vector<ForecastDensity>& parts, const PoolWeights& outer);

}  // namespace msarpool
