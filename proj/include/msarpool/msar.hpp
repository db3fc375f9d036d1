#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <vector>

#include "msarpool/quarter.hpp"
#include "msarpool/time_series.hpp"
#include "msarpool/view.hpp"

namespace msarpool {

class Rng;

// One joint draw of the MSAR parameters and the regime path. States are
// 0-based and aligned with the usable sample (observations p..T of the
// estimation window).
struct MSARDraw {
  Eigen::VectorXd beta;    // K regime intercepts
  Eigen::VectorXd alpha;   // p AR coefficients
  Eigen::VectorXd sigma2;  // K regime variances, > 0
  Eigen::MatrixXd xi;      // K x K row-stochastic transition matrix
  std::vector<int> states;
  double c0_scale = 1.0;   // hierarchical inverse-Gamma scale draw

  int num_regimes() const { return static_cast<int>(beta.size()); }
  int lag_order() const { return static_cast<int>(alpha.size()); }
  void validate() const;

  // Relabels regimes in place: new label perm[k] takes the role of old k.
  void permute_labels(std::span<const int> perm);
};

// Conditional mean of y at data index t given the regime and lagged values.
double msar_conditional_mean(std::span<const double> y, std::size_t t,
                             const Eigen::VectorXd& alpha, double beta_regime);

// Complete-data log likelihood: sum over the usable sample of the normal
// log density at the regime-specific mean and variance. States must have
// length y.size() - p with labels inside 0..K-1.
double conditional_loglik(const TimeSeries& y, const MSARDraw& theta,
                          std::span<const int> states);

struct SimulatedPath {
  TimeSeries y;
  std::vector<int> states;  // aligned with y (one per observation)
};

// Simulates the MSAR given parameters, conditional on `initial` supplying the
// first p observations. The first state is drawn from `initial_dist`.
SimulatedPath simulate_msar(const MSARDraw& params, std::span<const double> initial,
                            Quarter start, std::size_t length,
                            const Eigen::VectorXd& initial_dist, Rng& rng);

}  // namespace msarpool
