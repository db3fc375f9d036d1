#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>

#include "msarpool/filter.hpp"
#include "msarpool/msar.hpp"

namespace msarpool {

enum class InitialStateDist {
  Stationary,  // ergodic distribution of the current xi, recomputed per sweep
  Uniform,
};

struct SamplerConfig {
  int burn_in = 1000;
  int keep = 1000;
  int thin = 1;
  std::uint64_t seed = 0;

  InitialStateDist initial_dist = InitialStateDist::Stationary;
  // Random relabeling move after each sweep; keeps the chain moving across
  // the K! symmetric posterior modes so the bridge-sampling importance
  // density sees all of them.
  bool random_permutation = true;

  // Test hooks: freeze a block at known values instead of sampling it.
  std::optional<Eigen::VectorXd> fixed_sigma2;
  std::optional<double> fixed_c0;

  bool suppress_warnings = false;

  void validate() const;
};

// Archive of kept draws for one view on one sample window.
struct PosteriorDraws {
  int view_id = 0;
  Quarter window_start;
  Quarter window_end;
  std::uint64_t seed = 0;
  int burn_in = 0;
  int keep = 0;
  int thin = 0;
  int num_regimes = 0;
  int lag_order = 0;
  std::vector<MSARDraw> draws;
};

// Conditional samplers of the sweep; exposed for direct verification.
std::pair<Eigen::VectorXd, Eigen::VectorXd> sample_regression(
    const TimeSeries& y, std::span<const int> states, const ViewSpec& view,
    const Eigen::VectorXd& sigma2, Rng& rng);

Eigen::VectorXd sample_sigma2(const TimeSeries& y, std::span<const int> states,
                              const Eigen::VectorXd& beta, const Eigen::VectorXd& alpha,
                              const ViewSpec& view, double c0_scale, Rng& rng);

double sample_c0(const Eigen::VectorXd& sigma2, const ViewSpec& view, Rng& rng);

Eigen::MatrixXd sample_xi(std::span<const int> states, const ViewSpec& view, Rng& rng);

Eigen::VectorXd initial_state_distribution(const Eigen::MatrixXd& xi,
                                           InitialStateDist kind);

// Sufficient statistics of the heteroskedastic regression conditional,
// shared between the sweep and the bridge-sampling importance density.
struct RegressionPosterior {
  Eigen::VectorXd mean;
  Eigen::LLT<Eigen::MatrixXd> precision_chol;
};
RegressionPosterior regression_posterior(const TimeSeries& y, std::span<const int> states,
                                         const ViewSpec& view,
                                         const Eigen::VectorXd& sigma2);

// Full Gibbs run: burn_in + keep sweeps cycling filter -> states ->
// regression -> sigma2 -> C0 -> xi, returning kept (thinned) draws.
// Deterministic given cfg.seed.
PosteriorDraws run_gibbs(const TimeSeries& y, const ViewSpec& view,
                         const SamplerConfig& cfg);

// One successive-conditional sweep on externally held state; used by the
// sampler-correctness test harness.
void gibbs_sweep(const TimeSeries& y, const ViewSpec& view, const SamplerConfig& cfg,
                 MSARDraw& current, Rng& rng);

}  // namespace msarpool
