#include "msarpool/forecast.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <unordered_map>

#include "msarpool/errors.hpp"
#include "msarpool/mathutil.hpp"
#include "msarpool/rng.hpp"

namespace msarpool {

namespace {

// Exact-equality component merge; lossless by construction.
struct MeanVarKey {
  std::uint64_t mean_bits, var_bits;
  bool operator==(const MeanVarKey&) const = default;
};
struct MeanVarHash {
  std::size_t operator()(const MeanVarKey& k) const {
    return std::hash<std::uint64_t>()(k.mean_bits * 0x9e3779b97f4a7c15ULL ^ k.var_bits);
  }
};

MeanVarKey key_of(double mean, double variance) {
  MeanVarKey k{};
  std::memcpy(&k.mean_bits, &mean, sizeof(double));
  std::memcpy(&k.var_bits, &variance, sizeof(double));
  return k;
}

std::vector<NormalComponent> merge_exact(std::vector<NormalComponent> raw) {
  std::vector<NormalComponent> merged;
  merged.reserve(raw.size());
  std::unordered_map<MeanVarKey, std::size_t, MeanVarHash> index;
  for (const auto& c : raw) {
    const auto key = key_of(c.mean, c.variance);
    auto [it, inserted] = index.try_emplace(key, merged.size());
    if (inserted) {
      merged.push_back(c);
    } else {
      merged[it->second].weight += c.weight;
    }
  }
  return merged;
}

}  // namespace

ViewForecast forecast_view(const TimeSeries& y, const PosteriorDraws& draws,
                           const ForecastOptions& opts) {
  if (opts.horizon < 1) throw validation_error("forecast horizon must be >= 1");
  if (draws.draws.empty()) throw validation_error("empty draw archive");
  const int h = opts.horizon;
  const int p = draws.lag_order;
  const int k = draws.num_regimes;
  if (y.size() < static_cast<std::size_t>(p)) {
    throw validation_error("series shorter than the lag order");
  }
  const Quarter origin = y.last_period();
  const Quarter target = origin + h;
  const double draw_weight = 1.0 / static_cast<double>(draws.draws.size());

  Rng rng(opts.seed.value_or(mix_seed(draws.seed, 0x666f7265ULL,
                                      static_cast<std::uint64_t>(origin.index()), h)));

  std::vector<NormalComponent> components;
  components.reserve(draws.draws.size() * (h == 1 && !opts.kernel_fit ? k : 1));

  // Scratch holding the p lagged values followed by simulated steps.
  std::vector<double> path(y.values().end() - p, y.values().end());
  path.resize(static_cast<std::size_t>(p + h));

  std::vector<double> samples;
  for (const auto& d : draws.draws) {
    const int last_state = d.states.back();
    if (h == 1 && !opts.kernel_fit) {
      for (int j = 0; j < k; ++j) {
        const double w = d.xi(last_state, j);
        if (w == 0.0) continue;
        const double mean = msar_conditional_mean(y.values(), y.size(), d.alpha, d.beta[j]);
        components.push_back({mean, d.sigma2[j], w * draw_weight});
      }
      continue;
    }
    // Simulate the regime chain (and intermediate observations for h > 1).
    std::copy(y.values().end() - p, y.values().end(), path.begin());
    int state = last_state;
    std::vector<double> row(k);
    double mean = 0.0;
    for (int step = 0; step < h; ++step) {
      for (int j = 0; j < k; ++j) row[j] = d.xi(state, j);
      state = static_cast<int>(rng.categorical(row));
      mean = msar_conditional_mean(path, static_cast<std::size_t>(p + step), d.alpha,
                                   d.beta[state]);
      if (step + 1 < h) {
        path[static_cast<std::size_t>(p + step)] =
            mean + std::sqrt(d.sigma2[state]) * rng.normal();
      }
    }
    if (opts.kernel_fit) {
      samples.push_back(mean + std::sqrt(d.sigma2[state]) * rng.normal());
    } else {
      components.push_back({mean, d.sigma2[state], draw_weight});
    }
  }

  if (opts.kernel_fit) {
    // Gaussian kernel, Silverman's rule on the predictive sample.
    const auto n = static_cast<double>(samples.size());
    double mean = 0.0;
    for (double s : samples) mean += s;
    mean /= n;
    double var = 0.0;
    for (double s : samples) var += (s - mean) * (s - mean);
    var /= std::max(1.0, n - 1.0);
    std::vector<double> sorted = samples;
    std::sort(sorted.begin(), sorted.end());
    const double iqr = sorted[static_cast<std::size_t>(0.75 * (n - 1))] -
                       sorted[static_cast<std::size_t>(0.25 * (n - 1))];
    double spread = std::sqrt(var);
    if (iqr > 0.0) spread = std::min(spread, iqr / 1.34);
    double bw = 0.9 * spread * std::pow(n, -0.2);
    if (!(bw > 0.0)) bw = 1e-6;
    for (double s : samples) components.push_back({s, bw * bw, draw_weight});
  }

  ForecastDensity density(merge_exact(std::move(components)), target);
  return {draws.view_id, origin, h, std::move(density)};
}

double pit(const ForecastDensity& density, double realized) {
  return density.cdf(realized);
}

LogScore log_score(const ForecastDensity& density, double realized) {
  const double lp = density.log_pdf(realized);
  if (lp < kLogScoreFloor) return {kLogScoreFloor, true};
  return {lp, false};
}

}  // namespace msarpool
