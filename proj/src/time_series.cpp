#include "msarpool/time_series.hpp"

#include <cmath>

#include "msarpool/errors.hpp"

namespace msarpool {

TimeSeries::TimeSeries(Quarter start, std::vector<double> values)
    : start_(start), values_(std::move(values)) {
  if (values_.empty()) throw validation_error("time series must be nonempty");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw validation_error("non-finite observation at " + period(i).str());
    }
  }
}

double TimeSeries::at(Quarter q) const {
  if (!covers(q)) {
    throw validation_error("period " + q.str() + " outside sample [" + start_.str() +
                           ", " + last_period().str() + "]");
  }
  return values_[static_cast<std::size_t>(q - start_)];
}

TimeSeries TimeSeries::window(Quarter from, Quarter to) const {
  if (from > to) throw validation_error("window start after end");
  if (!covers(from) || !covers(to)) {
    throw validation_error("window [" + from.str() + ", " + to.str() +
                           "] outside sample [" + start_.str() + ", " +
                           last_period().str() + "]");
  }
  auto b = values_.begin() + (from - start_);
  auto e = values_.begin() + (to - start_) + 1;
  return TimeSeries(from, std::vector<double>(b, e));
}

TimeSeries year_on_year_growth(const TimeSeries& levels) {
  if (levels.size() <= 4) {
    throw validation_error("need more than 4 observations for year-on-year growth");
  }
  std::vector<double> growth(levels.size() - 4);
  for (std::size_t t = 4; t < levels.size(); ++t) {
    if (levels[t - 4] == 0.0) {
      throw validation_error("zero level at " + levels.period(t - 4).str() +
                             " in year-on-year transform");
    }
    growth[t - 4] = 100.0 * (levels[t] / levels[t - 4] - 1.0);
  }
  return TimeSeries(levels.start_period() + 4, std::move(growth));
}

}  // namespace msarpool
