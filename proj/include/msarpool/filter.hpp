#pragma once

#include <Eigen/Dense>
#include <vector>

#include "msarpool/msar.hpp"

namespace msarpool {

class Rng;

// Hamilton filter output over the usable sample: row t holds
// P(S_t = k | y up to t, theta); log_likelihood is log p(y | theta) with the
// states integrated out.
struct FilterState {
  Eigen::MatrixXd filtered_probs;  // N x K, rows sum to 1
  double log_likelihood = 0.0;
};

// Stationary distribution of a row-stochastic matrix via the linear system
// pi' (I - Xi + 11') = 1'. Falls back to uniform when the system is singular
// (reducible chain).
Eigen::VectorXd stationary_distribution(const Eigen::MatrixXd& xi);

// Forward filter with per-step max-subtraction of the log densities so that
// tiny likelihoods never flush the recursion to zero. Throws numeric_error on
// a degenerate step (all mass vanishes).
FilterState forward_filter(const TimeSeries& y, const MSARDraw& theta,
                           const Eigen::VectorXd& initial_dist);

// Backward-sampling pass of FFBS; draws one regime path from p(S | y, theta).
std::vector<int> sample_states(const FilterState& filter, const MSARDraw& theta,
                               Rng& rng);

}  // namespace msarpool
