#pragma once

#include <span>

namespace msarpool {

inline constexpr double kLogScoreFloor = -690.77552789821368;  // log(1e-300)

double log_sum_exp(std::span<const double> x);

double normal_pdf(double y, double mean, double variance);
double log_normal_pdf(double y, double mean, double variance);
double normal_cdf(double y, double mean, double variance);

// Gamma in shape/rate form, inverse-Gamma in shape/scale form (the scale is
// the numerator parameter: X ~ IG(a, b) has density b^a/Gamma(a) x^{-a-1} e^{-b/x}).
double log_gamma_pdf(double x, double shape, double rate);
double log_inverse_gamma_pdf(double x, double shape, double scale);
double log_dirichlet_pdf(std::span<const double> x, std::span<const double> alpha);

// Regularized incomplete gamma functions, P(a,x) lower and Q(a,x) upper.
double regularized_gamma_p(double a, double x);
double regularized_gamma_q(double a, double x);

double chi_squared_sf(double q, int df);

// Two-sided p-value of the one-sample Kolmogorov-Smirnov statistic from the
// asymptotic Kolmogorov distribution, series truncated at 100 terms.
double kolmogorov_asymptotic_pvalue(double statistic, std::size_t n);

}  // namespace msarpool
