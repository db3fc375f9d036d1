#pragma once

#include <stdexcept>
#include <string>

namespace msarpool {

// Bad inputs: shapes, ranges, malformed files. Maps to exit code 1.
class validation_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numerical failure: degenerate filter step, non-convergent bridge
// iteration, singular posterior. Maps to exit code 2.
class numeric_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace msarpool
