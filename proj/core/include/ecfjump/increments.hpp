#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ecf {

// Sorted increment sample with prefix sums of values and squared values.
// The cross-over curve, split point and variance pieces are all O(n) reads
// off these arrays. n is always the number of increments, not observations.
class IncrementSample {
 public:
  // Builds from raw increments (differences already taken).
  static IncrementSample from_increments(std::vector<double> increments);

  std::size_t size() const { return values_.size(); }
  const std::vector<double>& values() const { return values_; }

  // k-th order statistic, 1-based: order_stat(1) is the minimum.
  double order_stat(std::size_t k) const { return values_[k - 1]; }

  // Sum of the k smallest values (k in [0, n]).
  double prefix_sum(std::size_t k) const { return prefix_sum_[k]; }
  double prefix_sum_sq(std::size_t k) const { return prefix_sum_sq_[k]; }

  double total_sum() const { return prefix_sum_.back(); }
  double upper_sum(std::size_t k) const { return total_sum() - prefix_sum_[k]; }
  double upper_sum_sq(std::size_t k) const {
    return prefix_sum_sq_.back() - prefix_sum_sq_[k];
  }

 private:
  std::vector<double> values_;
  std::vector<double> prefix_sum_;
  std::vector<double> prefix_sum_sq_;
};

// Differences consecutive observations (a path of n+1 points yields n
// increments) and builds the sorted sample. Requires at least 3 observations
// and finite values throughout.
IncrementSample make_increments(std::span<const double> observations);

}  // namespace ecf
