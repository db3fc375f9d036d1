#include "msarpool/msar.hpp"

#include <cmath>

#include "msarpool/errors.hpp"
#include "msarpool/mathutil.hpp"
#include "msarpool/rng.hpp"

namespace msarpool {

void MSARDraw::validate() const {
  const int k = num_regimes();
  if (k < 1) throw validation_error("draw must have at least one regime");
  if (sigma2.size() != k) throw validation_error("sigma2 length must equal K");
  for (int i = 0; i < k; ++i) {
    if (!(sigma2[i] > 0.0)) throw validation_error("sigma2 entries must be > 0");
  }
  if (xi.rows() != k || xi.cols() != k) throw validation_error("xi must be K x K");
  for (int r = 0; r < k; ++r) {
    double sum = 0.0;
    for (int c = 0; c < k; ++c) {
      if (xi(r, c) < 0.0 || xi(r, c) > 1.0) {
        throw validation_error("xi entries must be in [0,1]");
      }
      sum += xi(r, c);
    }
    if (std::fabs(sum - 1.0) > 1e-12) {
      throw validation_error("xi row " + std::to_string(r) + " sums to " +
                             std::to_string(sum));
    }
  }
  for (int s : states) {
    if (s < 0 || s >= k) throw validation_error("state label outside 0..K-1");
  }
  if (!(c0_scale > 0.0)) throw validation_error("C0 draw must be > 0");
}

void MSARDraw::permute_labels(std::span<const int> perm) {
  const int k = num_regimes();
  Eigen::VectorXd new_beta(k), new_sigma2(k);
  Eigen::MatrixXd new_xi(k, k);
  for (int i = 0; i < k; ++i) {
    new_beta[perm[i]] = beta[i];
    new_sigma2[perm[i]] = sigma2[i];
  }
  for (int r = 0; r < k; ++r) {
    for (int c = 0; c < k; ++c) new_xi(perm[r], perm[c]) = xi(r, c);
  }
  beta = std::move(new_beta);
  sigma2 = std::move(new_sigma2);
  xi = std::move(new_xi);
  for (int& s : states) s = perm[s];
}

double msar_conditional_mean(std::span<const double> y, std::size_t t,
                             const Eigen::VectorXd& alpha, double beta_regime) {
  double m = beta_regime;
  for (int j = 0; j < alpha.size(); ++j) {
    m += alpha[j] * y[t - 1 - static_cast<std::size_t>(j)];
  }
  return m;
}

double conditional_loglik(const TimeSeries& y, const MSARDraw& theta,
                          std::span<const int> states) {
  const auto p = static_cast<std::size_t>(theta.lag_order());
  const int k = theta.num_regimes();
  if (y.size() <= p) throw validation_error("series shorter than lag order");
  if (states.size() != y.size() - p) {
    throw validation_error("state path length must equal the usable sample");
  }
  const auto values = y.values();
  double ll = 0.0;
  for (std::size_t t = p; t < y.size(); ++t) {
    const int s = states[t - p];
    if (s < 0 || s >= k) throw validation_error("state label outside 0..K-1");
    const double mean = msar_conditional_mean(values, t, theta.alpha, theta.beta[s]);
    ll += log_normal_pdf(values[t], mean, theta.sigma2[s]);
  }
  return ll;
}

SimulatedPath simulate_msar(const MSARDraw& params, std::span<const double> initial,
                            Quarter start, std::size_t length,
                            const Eigen::VectorXd& initial_dist, Rng& rng) {
  const auto p = static_cast<std::size_t>(params.lag_order());
  const int k = params.num_regimes();
  if (initial.size() != p) throw validation_error("need exactly p initial observations");
  if (initial_dist.size() != k) throw validation_error("initial distribution length != K");

  std::vector<double> y(initial.begin(), initial.end());
  y.resize(p + length);
  std::vector<int> states(length);

  std::vector<double> probs(initial_dist.data(), initial_dist.data() + k);
  int state = static_cast<int>(rng.categorical(probs));
  for (std::size_t t = 0; t < length; ++t) {
    if (t > 0) {
      for (int j = 0; j < k; ++j) probs[j] = params.xi(state, j);
      state = static_cast<int>(rng.categorical(probs));
    }
    states[t] = state;
    const double mean = msar_conditional_mean(y, p + t, params.alpha, params.beta[state]);
    y[p + t] = mean + std::sqrt(params.sigma2[state]) * rng.normal();
  }
  std::vector<double> out(y.begin() + static_cast<long>(p), y.end());
  return {TimeSeries(start, std::move(out)), std::move(states)};
}

}  // namespace msarpool
