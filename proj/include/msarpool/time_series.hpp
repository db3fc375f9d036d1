#pragma once

#include <span>
#include <vector>

#include "msarpool/quarter.hpp"

namespace msarpool {

// Dated, equally spaced quarterly observations. Immutable after construction.
class TimeSeries {
 public:
  static constexpr int kQuartersPerYear = 4;

  TimeSeries(Quarter start, std::vector<double> values);

  std::size_t size() const { return values_.size(); }
  Quarter start_period() const { return start_; }
  Quarter period(std::size_t i) const { return start_ + static_cast<int>(i); }
  Quarter last_period() const { return start_ + static_cast<int>(values_.size()) - 1; }

  double operator[](std::size_t i) const { return values_[i]; }
  double at(Quarter q) const;  // bounds-checked
  bool covers(Quarter q) const { return q >= start_ && q <= last_period(); }
  std::span<const double> values() const { return values_; }

  // Inclusive sub-window; throws if outside the sample.
  TimeSeries window(Quarter from, Quarter to) const;

 private:
  Quarter start_;
  std::vector<double> values_;
};

// value_t = 100 * (level_t / level_{t-4} - 1); the first 4 periods are dropped.
TimeSeries year_on_year_growth(const TimeSeries& levels);

}  // namespace msarpool
