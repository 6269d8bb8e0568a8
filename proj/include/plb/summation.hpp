#pragma once

#include <cmath>

namespace plb {

/// Neumaier (improved Kahan) accumulator. The result depends only on the
/// order of additions, never on thread count.
class CompensatedSum {
 public:
  void add(double term) noexcept {
    const double t = sum_ + term;
    if (std::abs(sum_) >= std::abs(term)) {
      compensation_ += (sum_ - t) + term;
    } else {
      compensation_ += (term - t) + sum_;
    }
    sum_ = t;
  }
  CompensatedSum& operator+=(double term) noexcept {
    add(term);
    return *this;
  }
  double value() const noexcept { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

}  // namespace plb
