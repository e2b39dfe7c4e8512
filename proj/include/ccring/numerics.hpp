#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>

namespace ccring {

inline constexpr double kPi = std::numbers::pi_v<double>;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi_v<double>;

// Kahan compensated accumulator. Summation order is part of the contract:
// callers add terms in a fixed (ascending-index) order so results are
// reproducible bit for bit regardless of how the surrounding code is threaded.
template <typename Scalar = double>
class KahanSum {
 public:
  void add(Scalar term) {
    const Scalar y = term - comp_;
    const Scalar t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = t;
  }
  Scalar value() const { return sum_; }

 private:
  Scalar sum_{};
  Scalar comp_{};
};

// Reduce an angle difference into (-pi, pi].
inline double wrap_angle(double delta) {
  double r = std::remainder(delta, kTwoPi);
  if (r <= -kPi) r += kTwoPi;
  return r;
}

inline bool approx_equal(double a, double b, double abs_tol,
                         double rel_tol = 0.0) {
  const double diff = std::abs(a - b);
  return diff <= abs_tol || diff <= rel_tol * std::max(std::abs(a), std::abs(b));
}

}  // namespace ccring
