#include "msarpool/mathutil.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "msarpool/errors.hpp"

namespace msarpool {

namespace {
constexpr double kHalfLog2Pi = 0.91893853320467274178;  // 0.5*log(2*pi)
}

double log_sum_exp(std::span<const double> x) {
  double m = -std::numeric_limits<double>::infinity();
  for (double v : x) m = std::max(m, v);
  if (!std::isfinite(m)) return m;  // all -inf (or a +inf/nan propagates)
  double s = 0.0;
  for (double v : x) s += std::exp(v - m);
  return m + std::log(s);
}

double normal_pdf(double y, double mean, double variance) {
  return std::exp(log_normal_pdf(y, mean, variance));
}

double log_normal_pdf(double y, double mean, double variance) {
  const double z = y - mean;
  return -kHalfLog2Pi - 0.5 * std::log(variance) - 0.5 * z * z / variance;
}

double normal_cdf(double y, double mean, double variance) {
  const double z = (y - mean) / std::sqrt(variance);
  return 0.5 * std::erfc(-z * M_SQRT1_2);
}

double log_gamma_pdf(double x, double shape, double rate) {
  if (x <= 0.0) return -std::numeric_limits<double>::infinity();
  return shape * std::log(rate) - std::lgamma(shape) + (shape - 1.0) * std::log(x) -
         rate * x;
}

double log_inverse_gamma_pdf(double x, double shape, double scale) {
  if (x <= 0.0) return -std::numeric_limits<double>::infinity();
  return shape * std::log(scale) - std::lgamma(shape) - (shape + 1.0) * std::log(x) -
         scale / x;
}

double log_dirichlet_pdf(std::span<const double> x, std::span<const double> alpha) {
  double alpha_sum = 0.0, lognorm = 0.0, kernel = 0.0;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    alpha_sum += alpha[i];
    lognorm += std::lgamma(alpha[i]);
    if (x[i] <= 0.0) return -std::numeric_limits<double>::infinity();
    kernel += (alpha[i] - 1.0) * std::log(x[i]);
  }
  return std::lgamma(alpha_sum) - lognorm + kernel;
}

// Series expansion, converges fast for x < a + 1.
static double gamma_p_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  double ap = a;
  for (int n = 0; n < 500; ++n) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Continued fraction (Lentz), for x >= a + 1.
static double gamma_q_contfrac(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double regularized_gamma_p(double a, double x) {
  if (a <= 0.0 || x < 0.0) throw validation_error("regularized_gamma_p: bad arguments");
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) return gamma_p_series(a, x);
  return 1.0 - gamma_q_contfrac(a, x);
}

double regularized_gamma_q(double a, double x) {
  if (a <= 0.0 || x < 0.0) throw validation_error("regularized_gamma_q: bad arguments");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_contfrac(a, x);
}

double chi_squared_sf(double q, int df) {
  if (df < 1) throw validation_error("chi_squared_sf: df must be >= 1");
  if (q <= 0.0) return 1.0;
  return regularized_gamma_q(0.5 * df, 0.5 * q);
}

double kolmogorov_asymptotic_pvalue(double statistic, std::size_t n) {
  if (statistic <= 0.0) return 1.0;
  const double lambda2 = static_cast<double>(n) * statistic * statistic;
  double p = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda2);
    p += (k % 2 == 1) ? term : -term;
    if (term < 1e-18) break;
  }
  return std::clamp(2.0 * p, 0.0, 1.0);
}

}  // namespace msarpool
