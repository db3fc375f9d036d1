#pragma once

#include <cstdint>
#include <functional>

#include "msarpool/pool.hpp"

namespace msarpool {

enum class Objective { LogScore, PitUniformity };  // f1, f2

struct OptimizerOptions {
  // EM (f1, weights mode)
  int em_max_iterations = 5000;
  double em_tolerance = 1e-9;  // relative objective change; sup-norm on weights too

  // Nelder-Mead multi-start (f2, and either objective in prior mode)
  int multi_starts = 20;  // vertices + barycenter + seeded random fills
  std::uint64_t seed = 7;
  int nm_max_iterations_per_dim = 400;
  double nm_tolerance = 1e-12;

  // Reporting stability: weights below this are truncated and renormalized.
  double truncation = 1e-10;
};

struct OptimizationResult {
  PoolWeights weights;
  double objective_value = 0.0;
};

// argmax over the simplex of the chosen objective in weights mode. f1 uses
// the multiplicative EM update (monotone ascent for the concave linear-pool
// log score); f2 uses Nelder-Mead on the softmax-reparameterized simplex
// over the documented start set. Both end by taking the best of the iterate,
// every vertex and the barycenter, so the returned value dominates all of
// them by construction.
OptimizationResult optimize_weights(const ForecastHistory& history, Objective objective,
                                    const OptimizerOptions& opts = {});

// Same contract in prior mode: the per-period evidence reweighting breaks
// the EM structure, so both objectives go through the multi-start path.
OptimizationResult optimize_prior(const ForecastHistory& history, Objective objective,
                                  const OptimizerOptions& opts = {});

// Generic simplex maximizer used by both entry points; exposed for tests.
OptimizationResult maximize_over_simplex(
    const std::function<double(const PoolWeights&)>& objective, std::size_t num_views,
    const OptimizerOptions& opts);

}  // namespace msarpool
