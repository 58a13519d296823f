#ifndef BUSBAR_NUMERICS_HPP
#define BUSBAR_NUMERICS_HPP

#include <cmath>
#include <numbers>

namespace busbar {

/// Vacuum permeability in N/A^2 (classical SI value).
inline constexpr double kMu0 = 4.0e-7 * std::numbers::pi;

/// mu0 / (2 pi): force per unit length between unit-current filaments 1 m apart.
inline constexpr double kMu0Over2Pi = kMu0 / (2.0 * std::numbers::pi);

/// Neumaier's variant of Kahan summation. Accumulation order is the call order.
template <class T>
class BasicCompensatedSum {
public:
  void add(T x) {
    using std::abs;
    const T t = sum_ + x;
    if (abs(sum_) >= abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  BasicCompensatedSum& operator+=(T x) {
    add(x);
    return *this;
  }

  T value() const { return sum_ + carry_; }

private:
  T sum_ = T(0);
  T carry_ = T(0);
};

using CompensatedSum = BasicCompensatedSum<double>;

}  // namespace busbar

#endif  // BUSBAR_NUMERICS_HPP
