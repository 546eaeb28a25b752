#pragma once

#include <cmath>

namespace lpiso {

// Neumaier-compensated accumulator in long double.
class AccurateSum {
 public:
  AccurateSum& operator+=(long double x) noexcept {
    const long double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
    return *this;
  }

  long double value() const noexcept { return sum_ + comp_; }

 private:
  long double sum_ = 0.0L;
  long double comp_ = 0.0L;
};

}  // namespace lpiso
