#include "msarpool/filter.hpp"

#include <cmath>

#include "msarpool/errors.hpp"
#include "msarpool/mathutil.hpp"
#include "msarpool/rng.hpp"

namespace msarpool {

Eigen::VectorXd stationary_distribution(const Eigen::MatrixXd& xi) {
  const int k = static_cast<int>(xi.rows());
  if (k == 1) return Eigen::VectorXd::Ones(1);
  // pi' Xi = pi', sum(pi) = 1  <=>  (I - Xi' + 1 1') pi = 1
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(k, k) - xi.transpose();
  a.array() += 1.0;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
  if (!lu.isInvertible()) {
    return Eigen::VectorXd::Constant(k, 1.0 / k);
  }
  Eigen::VectorXd pi = lu.solve(Eigen::VectorXd::Ones(k));
  if (!(pi.minCoeff() > -1e-12) || !pi.allFinite()) {
    return Eigen::VectorXd::Constant(k, 1.0 / k);
  }
  pi = pi.cwiseMax(0.0);
  pi /= pi.sum();
  return pi;
}

FilterState forward_filter(const TimeSeries& y, const MSARDraw& theta,
                           const Eigen::VectorXd& initial_dist) {
  const auto p = static_cast<std::size_t>(theta.lag_order());
  const int k = theta.num_regimes();
  if (y.size() <= p) throw validation_error("series shorter than lag order");
  if (initial_dist.size() != k) throw validation_error("initial distribution length != K");
  if (std::fabs(initial_dist.sum() - 1.0) > 1e-8 || initial_dist.minCoeff() < 0.0) {
    throw validation_error("initial distribution is not a simplex point");
  }

  const std::size_t n = y.size() - p;
  const auto values = y.values();
  FilterState out;
  out.filtered_probs.resize(static_cast<long>(n), k);
  Eigen::VectorXd pred = initial_dist;
  Eigen::VectorXd logdens(k), w(k);
  for (std::size_t t = 0; t < n; ++t) {
    const std::size_t idx = p + t;
    if (t > 0) pred = theta.xi.transpose() * out.filtered_probs.row(t - 1).transpose();
    double m = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < k; ++j) {
      const double mean = msar_conditional_mean(values, idx, theta.alpha, theta.beta[j]);
      logdens[j] = log_normal_pdf(values[idx], mean, theta.sigma2[j]);
      m = std::max(m, logdens[j]);
    }
    double norm = 0.0;
    for (int j = 0; j < k; ++j) {
      w[j] = pred[j] * std::exp(logdens[j] - m);
      norm += w[j];
    }
    if (!(norm > 0.0) || !std::isfinite(norm)) {
      throw numeric_error("degenerate filter step at observation " +
                          y.period(idx).str());
    }
    out.filtered_probs.row(t) = (w / norm).transpose();
    out.log_likelihood += m + std::log(norm);
  }
  return out;
}

std::vector<int> sample_states(const FilterState& filter, const MSARDraw& theta,
                               Rng& rng) {
  const auto n = static_cast<std::size_t>(filter.filtered_probs.rows());
  const int k = theta.num_regimes();
  std::vector<int> states(n);
  std::vector<double> probs(k);
  for (int j = 0; j < k; ++j) probs[j] = filter.filtered_probs(n - 1, j);
  states[n - 1] = static_cast<int>(rng.categorical(probs));
  for (std::size_t t = n - 1; t-- > 0;) {
    const int next = states[t + 1];
    for (int j = 0; j < k; ++j) {
      probs[j] = filter.filtered_probs(t, j) * theta.xi(j, next);
    }
    states[t] = static_cast<int>(rng.categorical(probs));
  }
  return states;
}

}  // namespace msarpool
