#pragma once

#include <cmath>

namespace qho::detail {

/// Neumaier-compensated accumulator.
class CompensatedSum {
 public:
  void add(double term) {
    const double t = sum_ + term;
    if (std::abs(sum_) >= std::abs(term)) {
      comp_ += (sum_ - t) + term;
    } else {
      comp_ += (term - t) + sum_;
    }
    sum_ = t;
    abs_ += std::abs(term);
  }
  double value() const { return sum_ + comp_; }
  /// Sum of |terms|; the scale that bounds the rounding error of value().
  double magnitude() const { return abs_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
  double abs_ = 0.0;
};

}  // namespace qho::detail
