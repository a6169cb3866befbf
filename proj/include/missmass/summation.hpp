#pragma once

#include <cmath>

namespace missmass {

/*
  Neumaier's variant of Kahan summation. Unlike plain Kahan it stays exact
  when an addend is larger in magnitude than the running sum, which happens
  when the first few atoms carry most of the mass.
*/
template <typename Value>
class CompensatedSum {
 public:
  constexpr CompensatedSum() = default;
  constexpr explicit CompensatedSum(Value initial) : sum_(initial) {}

  constexpr CompensatedSum& operator+=(Value value) noexcept {
    const Value t = sum_ + value;
    if (std::abs(sum_) >= std::abs(value)) {
      compensation_ += (sum_ - t) + value;
    } else {
      compensation_ += (value - t) + sum_;
    }
    sum_ = t;
    return *this;
  }

  constexpr Value value() const noexcept { return sum_ + compensation_; }

 private:
  Value sum_{0};
  Value compensation_{0};
};

template <typename Range>
double compensated_sum(const Range& values) {
  CompensatedSum<double> acc;
  for (const double v : values) acc += v;
  return acc.value();
}

}  // namespace missmass
