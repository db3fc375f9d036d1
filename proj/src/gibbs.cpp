#include "msarpool/gibbs.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numeric>

#include "msarpool/errors.hpp"
#include "msarpool/rng.hpp"

namespace msarpool {

void SamplerConfig::validate() const {
  if (burn_in < 0) throw validation_error("burn_in must be >= 0");
  if (keep < 1) throw validation_error("keep must be >= 1");
  if (thin < 1) throw validation_error("thin must be >= 1");
  if (fixed_sigma2 && fixed_sigma2->minCoeff() <= 0.0) {
    throw validation_error("fixed sigma2 entries must be > 0");
  }
  if (fixed_c0 && *fixed_c0 <= 0.0) throw validation_error("fixed C0 must be > 0");
}

Eigen::VectorXd initial_state_distribution(const Eigen::MatrixXd& xi,
                                           InitialStateDist kind) {
  if (kind == InitialStateDist::Uniform) {
    return Eigen::VectorXd::Constant(xi.rows(), 1.0 / static_cast<double>(xi.rows()));
  }
  return stationary_distribution(xi);
}

RegressionPosterior regression_posterior(const TimeSeries& y, std::span<const int> states,
                                         const ViewSpec& view,
                                         const Eigen::VectorXd& sigma2) {
  const int k = view.num_regimes;
  const int p = view.lag_order;
  const int dim = k + p;
  const auto pu = static_cast<std::size_t>(p);
  if (states.size() != y.size() - pu) {
    throw validation_error("state path length must equal the usable sample");
  }
  const auto values = y.values();

  Eigen::MatrixXd precision = Eigen::MatrixXd::Zero(dim, dim);
  Eigen::VectorXd shift = Eigen::VectorXd::Zero(dim);
  for (int i = 0; i < k; ++i) {
    precision(i, i) = 1.0 / view.intercept_variance[i];
    shift[i] = view.intercept_mean[i] / view.intercept_variance[i];
  }
  for (int j = 0; j < p; ++j) {
    precision(k + j, k + j) = 1.0 / view.ar_variance[j];
    shift[k + j] = view.ar_mean[j] / view.ar_variance[j];
  }

  Eigen::VectorXd x(dim);
  for (std::size_t t = pu; t < y.size(); ++t) {
    const int s = states[t - pu];
    x.setZero();
    x[s] = 1.0;
    for (int j = 0; j < p; ++j) x[k + j] = values[t - 1 - static_cast<std::size_t>(j)];
    const double w = 1.0 / sigma2[s];
    precision.selfadjointView<Eigen::Lower>().rankUpdate(x, w);
    shift += (w * values[t]) * x;
  }
  precision = precision.selfadjointView<Eigen::Lower>();

  RegressionPosterior post;
  post.precision_chol.compute(precision);
  if (post.precision_chol.info() != Eigen::Success) {
    throw numeric_error("ill-posed regression: posterior precision not PD");
  }
  post.mean = post.precision_chol.solve(shift);
  return post;
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> sample_regression(
    const TimeSeries& y, std::span<const int> states, const ViewSpec& view,
    const Eigen::VectorXd& sigma2, Rng& rng) {
  const int k = view.num_regimes;
  const int p = view.lag_order;
  const auto post = regression_posterior(y, states, view, sigma2);
  Eigen::VectorXd z(k + p);
  for (int i = 0; i < k + p; ++i) z[i] = rng.normal();
  // theta = mean + L^{-T} z gives covariance (L L^T)^{-1} = precision^{-1}
  Eigen::VectorXd draw =
      post.mean + post.precision_chol.matrixU().solve(z);
  return {draw.head(k), draw.tail(p)};
}

Eigen::VectorXd sample_sigma2(const TimeSeries& y, std::span<const int> states,
                              const Eigen::VectorXd& beta, const Eigen::VectorXd& alpha,
                              const ViewSpec& view, double c0_scale, Rng& rng) {
  const int k = view.num_regimes;
  const auto pu = static_cast<std::size_t>(view.lag_order);
  const auto values = y.values();
  Eigen::VectorXd count = Eigen::VectorXd::Zero(k);
  Eigen::VectorXd ssr = Eigen::VectorXd::Zero(k);
  for (std::size_t t = pu; t < y.size(); ++t) {
    const int s = states[t - pu];
    const double resid = values[t] - msar_conditional_mean(values, t, alpha, beta[s]);
    count[s] += 1.0;
    ssr[s] += resid * resid;
  }
  Eigen::VectorXd sigma2(k);
  for (int i = 0; i < k; ++i) {
    // Empty regimes fall back to the prior (count and ssr both zero).
    sigma2[i] = rng.inverse_gamma(view.sigma_shape + 0.5 * count[i],
                                  c0_scale + 0.5 * ssr[i]);
  }
  return sigma2;
}

double sample_c0(const Eigen::VectorXd& sigma2, const ViewSpec& view, Rng& rng) {
  const double shape = view.c0_shape + sigma2.size() * view.sigma_shape;
  double rate = view.c0_rate;
  for (int i = 0; i < sigma2.size(); ++i) rate += 1.0 / sigma2[i];
  return rng.gamma(shape, rate);
}

Eigen::MatrixXd sample_xi(std::span<const int> states, const ViewSpec& view, Rng& rng) {
  const int k = view.num_regimes;
  if (k == 1) return Eigen::MatrixXd::Ones(1, 1);
  Eigen::MatrixXd counts = Eigen::MatrixXd::Zero(k, k);
  for (std::size_t t = 0; t + 1 < states.size(); ++t) {
    counts(states[t], states[t + 1]) += 1.0;
  }
  Eigen::MatrixXd xi(k, k);
  std::vector<double> conc(k);
  for (int r = 0; r < k; ++r) {
    for (int c = 0; c < k; ++c) conc[c] = view.dirichlet[r][c] + counts(r, c);
    const auto row = rng.dirichlet(conc);
    for (int c = 0; c < k; ++c) xi(r, c) = row[c];
  }
  return xi;
}

namespace {

MSARDraw prior_mean_start(const TimeSeries& y, const ViewSpec& view) {
  const int k = view.num_regimes;
  const int p = view.lag_order;
  MSARDraw d;
  d.beta = Eigen::Map<const Eigen::VectorXd>(view.intercept_mean.data(), k);
  d.alpha = p > 0 ? Eigen::Map<const Eigen::VectorXd>(view.ar_mean.data(), p)
                  : Eigen::VectorXd(0);
  d.c0_scale = view.c0_shape / view.c0_rate;
  d.sigma2 = Eigen::VectorXd::Constant(k, d.c0_scale / (view.sigma_shape - 1.0));
  d.xi.resize(k, k);
  for (int r = 0; r < k; ++r) {
    double rowsum = 0.0;
    for (int c = 0; c < k; ++c) rowsum += view.dirichlet[r][c];
    for (int c = 0; c < k; ++c) d.xi(r, c) = view.dirichlet[r][c] / rowsum;
  }
  d.states.assign(y.size() - static_cast<std::size_t>(p), 0);
  return d;
}

void apply_random_permutation(MSARDraw& draw, Rng& rng) {
  const int k = draw.num_regimes();
  if (k < 2) return;
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  // Fisher-Yates with the chain's own stream, uniform over all k! orders.
  for (int i = k - 1; i > 0; --i) {
    const auto j = static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(i + 1));
    std::swap(perm[i], perm[j]);
  }
  draw.permute_labels(perm);
}

}  // namespace

void gibbs_sweep(const TimeSeries& y, const ViewSpec& view, const SamplerConfig& cfg,
                 MSARDraw& current, Rng& rng) {
  const auto filter =
      forward_filter(y, current, initial_state_distribution(current.xi, cfg.initial_dist));
  current.states = sample_states(filter, current, rng);
  auto [beta, alpha] = sample_regression(y, current.states, view, current.sigma2, rng);
  current.beta = std::move(beta);
  current.alpha = std::move(alpha);
  if (cfg.fixed_sigma2) {
    current.sigma2 = *cfg.fixed_sigma2;
  } else {
    current.sigma2 =
        sample_sigma2(y, current.states, current.beta, current.alpha, view,
                      current.c0_scale, rng);
  }
  if (cfg.fixed_c0) {
    current.c0_scale = *cfg.fixed_c0;
  } else {
    current.c0_scale = sample_c0(current.sigma2, view, rng);
  }
  current.xi = sample_xi(current.states, view, rng);
  if (cfg.random_permutation) apply_random_permutation(current, rng);
}

PosteriorDraws run_gibbs(const TimeSeries& y, const ViewSpec& view,
                         const SamplerConfig& cfg) {
  view.validate();
  cfg.validate();
  const auto min_len =
      static_cast<std::size_t>(view.lag_order + 10 * view.num_regimes);
  if (y.size() < min_len) {
    throw validation_error("sample of " + std::to_string(y.size()) +
                           " is below the minimum p + 10K = " + std::to_string(min_len));
  }
  if (cfg.keep / cfg.thin < 100 && !cfg.suppress_warnings) {
    std::cerr << "warning: keeping only " << cfg.keep / cfg.thin
              << " draws; production runs should keep at least 100\n";
  }

  Rng rng(cfg.seed);
  MSARDraw current = prior_mean_start(y, view);
  if (cfg.fixed_sigma2) current.sigma2 = *cfg.fixed_sigma2;
  if (cfg.fixed_c0) current.c0_scale = *cfg.fixed_c0;

  PosteriorDraws out;
  out.view_id = view.id;
  out.window_start = y.start_period();
  out.window_end = y.last_period();
  out.seed = cfg.seed;
  out.burn_in = cfg.burn_in;
  out.keep = cfg.keep;
  out.thin = cfg.thin;
  out.num_regimes = view.num_regimes;
  out.lag_order = view.lag_order;
  out.draws.reserve(static_cast<std::size_t>(cfg.keep / cfg.thin));

  const int total = cfg.burn_in + cfg.keep;
  for (int sweep = 0; sweep < total; ++sweep) {
    try {
      gibbs_sweep(y, view, cfg, current, rng);
    } catch (const numeric_error& e) {
      throw numeric_error(std::string(e.what()) + " (sweep " + std::to_string(sweep) +
                          ", view " + std::to_string(view.id) + ")");
    }
    const int kept_index = sweep - cfg.burn_in;
    if (kept_index >= 0 && kept_index % cfg.thin == 0) {
      out.draws.push_back(current);
    }
  }
  return out;
}

}  // namespace msarpool
