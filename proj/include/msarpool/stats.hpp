#pragma once

#include <span>
#include <vector>

namespace msarpool {

struct KsTest {
  double statistic = 0.0;
  double p_value = 0.0;
};

// Two-sided one-sample Kolmogorov-Smirnov test against Uniform(0,1);
// asymptotic p-value. Requires n >= 5 and all values inside [0,1].
KsTest ks_test(std::span<const double> pits);

struct LjungBox {
  double statistic = 0.0;
  double p_value = 0.0;
};

// Ljung-Box serial-independence test on the PITs. Moment 1 tests the
// demeaned PITs, moment 2 the squared demeaned PITs; Q with `lags`
// autocorrelations against chi-square(lags).
LjungBox ljung_box(std::span<const double> series, int moment, int lags = 4);

// Average predictive density: mean of the exponential of the log scores.
double apd(std::span<const double> log_scores);

}  // namespace msarpool
