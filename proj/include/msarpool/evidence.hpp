#pragma once

#include <cstdint>

#include "msarpool/gibbs.hpp"

namespace msarpool {

struct EvidenceOptions {
  int importance_draws = 1000;  // draws from the importance density
  int mixture_terms = 100;      // full-conditional kernels mixed into it
  int max_iterations = 1000;
  double tolerance = 1e-10;
  std::uint64_t seed = 1;

  void validate() const;
};

// Bridge-sampling estimate of log p(y | view). The importance density is a
// mixture of complete-data full-conditional kernels anchored at an evenly
// spaced subset of the MCMC draws; the bridge identity is then iterated to
// convergence in log space. `cfg` must describe the run that produced
// `draws` (initial-distribution mode and any frozen blocks change both the
// likelihood and which blocks carry prior mass).
double log_marginal_likelihood(const TimeSeries& y, const ViewSpec& view,
                               const PosteriorDraws& draws, const SamplerConfig& cfg,
                               const EvidenceOptions& opts = {});

}  // namespace msarpool
