#include "msarpool/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "msarpool/errors.hpp"
#include "msarpool/mathutil.hpp"
#include "msarpool/rng.hpp"

namespace msarpool {

namespace {

PoolWeights softmax(const std::vector<double>& z) {
  const double m = *std::max_element(z.begin(), z.end());
  std::vector<double> w(z.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    w[i] = std::exp(z[i] - m);
    sum += w[i];
  }
  for (auto& v : w) v /= sum;
  return PoolWeights(std::move(w));
}

PoolWeights truncate_small(const PoolWeights& w, double eps) {
  std::vector<double> v(w.values().begin(), w.values().end());
  double sum = 0.0;
  for (auto& x : v) {
    if (x < eps) x = 0.0;
    sum += x;
  }
  for (auto& x : v) x /= sum;
  return PoolWeights(std::move(v));
}

// Standard Nelder-Mead on an unconstrained vector, maximizing.
std::pair<std::vector<double>, double> nelder_mead(
    const std::function<double(const std::vector<double>&)>& f, std::vector<double> z0,
    int max_iterations, double tolerance) {
  const std::size_t n = z0.size();
  struct Point {
    std::vector<double> z;
    double value;
  };
  std::vector<Point> simplex;
  simplex.reserve(n + 1);
  simplex.push_back({z0, f(z0)});
  for (std::size_t i = 0; i < n; ++i) {
    auto z = z0;
    z[i] += 0.5;
    simplex.push_back({z, f(z)});
  }
  auto by_value = [](const Point& a, const Point& b) { return a.value > b.value; };

  for (int it = 0; it < max_iterations; ++it) {
    std::sort(simplex.begin(), simplex.end(), by_value);
    if (simplex.front().value - simplex.back().value <
        tolerance * (1.0 + std::fabs(simplex.front().value))) {
      break;
    }
    // Centroid of all but the worst.
    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[i].z[j];
    }
    for (auto& c : centroid) c /= static_cast<double>(n);
    Point& worst = simplex.back();

    auto blend = [&](double coef) {
      std::vector<double> z(n);
      for (std::size_t j = 0; j < n; ++j) {
        z[j] = centroid[j] + coef * (centroid[j] - worst.z[j]);
      }
      return z;
    };

    const auto reflected = blend(1.0);
    const double fr = f(reflected);
    if (fr > simplex.front().value) {
      const auto expanded = blend(2.0);
      const double fe = f(expanded);
      if (fe > fr) worst = {expanded, fe};
      else worst = {reflected, fr};
      continue;
    }
    if (fr > simplex[n - 1].value) {
      worst = {reflected, fr};
      continue;
    }
    const auto contracted = blend(-0.5);
    const double fc = f(contracted);
    if (fc > worst.value) {
      worst = {contracted, fc};
      continue;
    }
    // Shrink toward the best point.
    for (std::size_t i = 1; i <= n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        simplex[i].z[j] = 0.5 * (simplex[i].z[j] + simplex[0].z[j]);
      }
      simplex[i].value = f(simplex[i].z);
    }
  }
  std::sort(simplex.begin(), simplex.end(), by_value);
  return {simplex.front().z, simplex.front().value};
}

}  // namespace

OptimizationResult maximize_over_simplex(
    const std::function<double(const PoolWeights&)>& objective, std::size_t num_views,
    const OptimizerOptions& opts) {
  if (num_views == 0) throw validation_error("empty catalogue");
  if (num_views == 1) {
    PoolWeights w = PoolWeights::unit(1, 0);
    return {w, objective(w)};
  }

  // Documented start set: every vertex, the barycenter, then seeded
  // Dirichlet(1) fills up to multi_starts.
  std::vector<std::vector<double>> starts;
  constexpr double kVertexLogit = 16.0;  // softmax puts ~1 - 1e-7 on the vertex
  for (std::size_t i = 0; i < num_views; ++i) {
    std::vector<double> z(num_views, 0.0);
    z[i] = kVertexLogit;
    starts.push_back(std::move(z));
  }
  starts.emplace_back(num_views, 0.0);  // barycenter
  Rng rng(mix_seed(opts.seed, num_views, 0x6e6d73746172ULL));
  while (starts.size() < static_cast<std::size_t>(opts.multi_starts)) {
    std::vector<double> alpha(num_views, 1.0);
    const auto w = rng.dirichlet(alpha);
    std::vector<double> z(num_views);
    for (std::size_t i = 0; i < num_views; ++i) z[i] = std::log(std::max(w[i], 1e-12));
    starts.push_back(std::move(z));
  }

  const auto f = [&](const std::vector<double>& z) { return objective(softmax(z)); };

  bool any_finite = false;
  std::vector<double> best_z;
  double best_value = -std::numeric_limits<double>::infinity();
  const int max_iter = opts.nm_max_iterations_per_dim * static_cast<int>(num_views);
  for (const auto& z0 : starts) {
    const double f0 = f(z0);
    if (std::isfinite(f0)) any_finite = true;
    if (f0 > best_value) {
      best_value = f0;
      best_z = z0;
    }
    if (!std::isfinite(f0)) continue;
    auto [z, value] = nelder_mead(f, z0, max_iter, opts.nm_tolerance);
    if (value > best_value) {
      best_value = value;
      best_z = z;
    }
  }
  if (!any_finite) {
    throw numeric_error("objective is non-finite at every start point");
  }

  PoolWeights w = truncate_small(softmax(best_z), opts.truncation);
  double value = objective(w);
  // Truncation is for reporting; never let it cost objective value.
  if (value < best_value) {
    w = softmax(best_z);
    value = objective(w);
  }
  return {w, value};
}

namespace {

// Multiplicative EM update for the linear-pool log score:
// w_i <- (1/R) sum_t w_i p_ti / sum_j w_j p_tj.
OptimizationResult em_log_score(const ForecastHistory& history,
                                const OptimizerOptions& opts) {
  const std::size_t n = history.num_views;
  const std::size_t r = history.points.size();
  std::vector<double> w(n, 1.0 / static_cast<double>(n));
  std::vector<double> next(n), logs(n);
  double prev_value = -std::numeric_limits<double>::infinity();
  for (int it = 0; it < opts.em_max_iterations; ++it) {
    std::fill(next.begin(), next.end(), 0.0);
    double value = 0.0;
    for (const auto& pt : history.points) {
      for (std::size_t i = 0; i < n; ++i) {
        logs[i] = w[i] > 0.0 ? std::log(w[i]) + pt.view_log_pdf[static_cast<long>(i)]
                             : -std::numeric_limits<double>::infinity();
      }
      const double norm = log_sum_exp(logs);
      value += norm;
      for (std::size_t i = 0; i < n; ++i) {
        if (w[i] > 0.0) next[i] += std::exp(logs[i] - norm);
      }
    }
    double sup_change = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      next[i] /= static_cast<double>(r);
      sup_change = std::max(sup_change, std::fabs(next[i] - w[i]));
    }
    w = next;
    const bool value_converged =
        std::fabs(value - prev_value) <= opts.em_tolerance * (1.0 + std::fabs(value));
    prev_value = value;
    if (sup_change < 1e-13 || (it > 0 && value_converged && sup_change < 1e-10)) break;
  }
  PoolWeights result = truncate_small(PoolWeights(w), opts.truncation);
  return {result, objective_f1(result, history, PoolMode::Weights)};
}

OptimizationResult pick_best_of(OptimizationResult candidate,
                                const std::function<double(const PoolWeights&)>& objective,
                                std::size_t n) {
  // Vertices and the barycenter are always admissible answers. Vertices
  // replace the iterate only when strictly better; the barycenter also wins
  // ties, the documented tie-break for symmetric problems.
  const auto tie_eps = [](double v) { return 1e-12 * (1.0 + std::fabs(v)); };
  for (std::size_t i = 0; i < n; ++i) {
    PoolWeights v = PoolWeights::unit(n, i);
    const double value = objective(v);
    if (value > candidate.objective_value + tie_eps(value)) candidate = {v, value};
  }
  PoolWeights bary = PoolWeights::uniform(n);
  const double value = objective(bary);
  if (value >= candidate.objective_value - tie_eps(value)) candidate = {bary, value};
  return candidate;
}

}  // namespace

OptimizationResult optimize_weights(const ForecastHistory& history, Objective objective,
                                    const OptimizerOptions& opts) {
  history.validate();
  const std::size_t n = history.num_views;
  const auto eval = [&](const PoolWeights& w) {
    return objective == Objective::LogScore ? objective_f1(w, history, PoolMode::Weights)
                                            : objective_f2(w, history, PoolMode::Weights);
  };
  if (n == 1) return {PoolWeights::unit(1, 0), eval(PoolWeights::unit(1, 0))};
  OptimizationResult result = objective == Objective::LogScore
                                  ? em_log_score(history, opts)
                                  : maximize_over_simplex(eval, n, opts);
  return pick_best_of(std::move(result), eval, n);
}

OptimizationResult optimize_prior(const ForecastHistory& history, Objective objective,
                                  const OptimizerOptions& opts) {
  history.validate();
  if (!history.has_evidence()) {
    throw validation_error("prior optimization needs an evidence table");
  }
  const std::size_t n = history.num_views;
  const auto eval = [&](const PoolWeights& w) {
    return objective == Objective::LogScore ? objective_f1(w, history, PoolMode::Prior)
                                            : objective_f2(w, history, PoolMode::Prior);
  };
  if (n == 1) return {PoolWeights::unit(1, 0), eval(PoolWeights::unit(1, 0))};
  OptimizationResult result = maximize_over_simplex(eval, n, opts);
  return pick_best_of(std::move(result), eval, n);
}

}  // namespace msarpool
