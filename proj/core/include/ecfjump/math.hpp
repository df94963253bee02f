#pragma once

#include <cmath>
#include <functional>

namespace ecf {

inline constexpr double kInvSqrt2Pi = 0.3989422804014326779;
inline constexpr double kSqrt2 = 1.4142135623730950488;

inline double norm_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

inline double norm_cdf(double x) { return 0.5 * std::erfc(-x / kSqrt2); }

// Inverse standard normal CDF, p in (0, 1).
double norm_quantile(double p);

// Upper-tail critical value z with P(Z > z) = a.
inline double norm_upper_critical(double a) { return norm_quantile(1.0 - a); }

// E|Z|^p for Z standard normal and even integer p.
double abs_moment_even(int p);

// Adaptive Gauss-Kronrod integral of f over [a, b].
double integrate(const std::function<double(double)>& f, double a, double b);

// Running sum with Neumaier compensation; keeps long prefix sums accurate.
class CompensatedSum {
 public:
  void add(double x) {
    double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      carry_ += (sum_ - t) + x;
    else
      carry_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

}  // namespace ecf
