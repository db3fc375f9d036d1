#pragma once

#include <cstdint>
#include <optional>

#include "msarpool/gibbs.hpp"
#include "msarpool/mixture.hpp"

namespace msarpool {

struct ViewForecast {
  int view_id = 0;
  Quarter origin_period;  // forecast made at the end of the estimation window
  int horizon = 1;
  ForecastDensity density;
};

struct ForecastOptions {
  int horizon = 1;
  // Replication mode: instead of the exact per-draw mixture, sample one
  // y_{T+h} per draw and fit a Gaussian kernel density with Silverman
  // bandwidth to the sample.
  bool kernel_fit = false;
  // Stream for state simulation (h > 1) and kernel mode; derived from the
  // draw archive seed when not set.
  std::optional<std::uint64_t> seed;
};

// One-step densities use the Rao-Blackwellized form: each draw contributes
// all K regime components weighted by its one-step transition row, which is
// exact for the predictive mixture. h > 1 falls back to simulating the state
// chain and intermediate observations per draw (approximate).
ViewForecast forecast_view(const TimeSeries& y, const PosteriorDraws& draws,
                           const ForecastOptions& opts = {});

double pit(const ForecastDensity& density, double realized);

struct LogScore {
  double value = 0.0;
  bool floored = false;  // true when the density underflowed 1e-300
};
LogScore log_score(const ForecastDensity& density, double realized);

}  // namespace msarpool
