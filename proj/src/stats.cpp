#include "msarpool/stats.hpp"

#include <algorithm>
#include <cmath>

#include "msarpool/errors.hpp"
#include "msarpool/mathutil.hpp"
#include "msarpool/pool.hpp"

namespace msarpool {

KsTest ks_test(std::span<const double> pits) {
  if (pits.size() < 5) throw validation_error("KS test needs at least 5 PITs");
  for (double u : pits) {
    if (!(u >= 0.0 && u <= 1.0)) {
      throw validation_error("PIT value " + std::to_string(u) + " outside [0,1]");
    }
  }
  const double d = ks_statistic(std::vector<double>(pits.begin(), pits.end()));
  return {d, kolmogorov_asymptotic_pvalue(d, pits.size())};
}

LjungBox ljung_box(std::span<const double> series, int moment, int lags) {
  if (series.size() <= 10) throw validation_error("Ljung-Box needs more than 10 points");
  if (moment != 1 && moment != 2) throw validation_error("moment must be 1 or 2");
  if (lags < 1) throw validation_error("lags must be >= 1");
  const auto n = series.size();

  double mean = 0.0;
  for (double u : series) mean += u;
  mean /= static_cast<double>(n);

  std::vector<double> x(n);
  for (std::size_t t = 0; t < n; ++t) {
    const double d = series[t] - mean;
    x[t] = moment == 1 ? d : d * d;
  }
  double xbar = 0.0;
  for (double v : x) xbar += v;
  xbar /= static_cast<double>(n);
  double denom = 0.0;
  for (double v : x) denom += (v - xbar) * (v - xbar);
  if (denom <= 0.0) throw validation_error("zero variance series in Ljung-Box test");

  double q = 0.0;
  for (int l = 1; l <= lags; ++l) {
    double num = 0.0;
    for (std::size_t t = static_cast<std::size_t>(l); t < n; ++t) {
      num += (x[t] - xbar) * (x[t - static_cast<std::size_t>(l)] - xbar);
    }
    const double rho = num / denom;
    q += rho * rho / static_cast<double>(n - static_cast<std::size_t>(l));
  }
  q *= static_cast<double>(n) * (static_cast<double>(n) + 2.0);
  return {q, chi_squared_sf(q, lags)};
}

double apd(std::span<const double> log_scores) {
  if (log_scores.empty()) throw validation_error("no log scores");
  double sum = 0.0;
  for (double s : log_scores) sum += std::exp(s);
  return sum / static_cast<double>(log_scores.size());
}

}  // namespace msarpool
