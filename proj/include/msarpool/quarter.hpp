#pragma once

#include <compare>
#include <string>

namespace msarpool {

// Calendar quarter held as a flat integer index (year * 4 + quarter - 1).
// All date arithmetic in the library is integer arithmetic on this index.
class Quarter {
 public:
  Quarter() = default;
  constexpr explicit Quarter(int index) : index_(index) {}

  static Quarter of(int year, int quarter);

  // Accepts "1948Q1", "1948q1" or an ISO date "1948-01-01" (month mapped to
  // its quarter). Throws validation_error otherwise.
  static Quarter parse(const std::string& text);

  constexpr int index() const { return index_; }
  int year() const;
  int quarter() const;  // 1..4
  std::string str() const;

  Quarter operator+(int n) const { return Quarter(index_ + n); }
  Quarter operator-(int n) const { return Quarter(index_ - n); }
  Quarter& operator++() { ++index_; return *this; }
  friend int operator-(Quarter a, Quarter b) { return a.index_ - b.index_; }
  friend auto operator<=>(Quarter a, Quarter b) = default;

 private:
  int index_ = 0;
};

}  // namespace msarpool
