#pragma once

#include <cmath>
#include <limits>

namespace ssgauss::detail {

// a^p - b^p for a, b >= 0 without catastrophic cancellation when a ~ b.
inline double pow_diff(double a, double b, double p) {
  if (p == 0.0) return 0.0;
  if (b == 0.0) {
    const double bp = p > 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return std::pow(a, p) - bp;
  }
  if (a == 0.0) {
    const double ap = p > 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return ap - std::pow(b, p);
  }
  return std::pow(b, p) * std::expm1(p * std::log1p((a - b) / b));
}

// Second central difference (x+1)^p - 2 x^p + (x-1)^p for x >= 1.
// For x >= 8 the binomial series 2 sum_{m>=1} C(p, 2m) x^{p-2m} is used;
// the direct form loses most of its digits there.
inline double second_diff_pow(double x, double p) {
  if (p == 0.0) return 0.0;
  if (x < 8.0) {
    const double below = (x == 1.0) ? (p > 0.0 ? 0.0 : std::numeric_limits<double>::infinity())
                                    : std::pow(x - 1.0, p);
    return std::pow(x + 1.0, p) - 2.0 * std::pow(x, p) + below;
  }
  const double inv_x2 = 1.0 / (x * x);
  double binom = p * (p - 1.0) / 2.0;  // C(p, 2)
  double scale = inv_x2;
  double sum = 0.0;
  for (int m = 1; m <= 60; ++m) {
    const double term = binom * scale;
    sum += term;
    if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
    const double k = 2.0 * m;
    binom *= (p - k) * (p - k - 1.0) / ((k + 1.0) * (k + 2.0));
    scale *= inv_x2;
  }
  return 2.0 * std::pow(x, p) * sum;
}

// Neumaier-compensated running sum; summation order is the caller's.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      carry_ += (sum_ - t) + v;
    } else {
      carry_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

}  // namespace ssgauss::detail
