#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ecfjump/increments.hpp"

namespace ecf {

// Empirical cross-over curve of a sorted increment sample.
//
// grid[k-1] is the curve value on [(k-1)/n, k/n) for k = 1..n-1:
//   mean of the k smallest values - W_(k)
//   + mean of the n-k largest values - W_(k+1).
// terminal is the value on [(n-1)/n, 1): mean of all values - W_(n).
//
// For every sample, grid.front() >= 0 and terminal <= 0 hold identically,
// so a sign change always exists.
struct EcfCurve {
  std::vector<double> grid;
  double terminal = 0.0;
  std::size_t n = 0;
};

EcfCurve compute_ecf(const IncrementSample& sample);

enum class Boundary { interior, all_negative, all_positive };

// Split point: the last sign change of the cross-over curve.
//
// p_n = crossing_index / n where crossing_index is the largest k in [1, n-1]
// with grid value at (k-1)/n times the value at k/n <= 0 (for k = n-1 the
// second factor is the terminal value). Zero products count as crossings.
// The all-negative / all-positive branches (p_n = 0 or 1) are kept for
// contract completeness; the endpoint sign identities above make them
// unreachable from compute_ecf output.
struct SplitPointEstimate {
  double p_n = 0.0;
  std::optional<std::size_t> crossing_index;
  Boundary boundary = Boundary::interior;
  // All grid values exactly zero (e.g. all increments equal); p_n is then
  // (n-1)/n by the max-k rule and downstream inference must refuse it.
  bool degenerate_zero_curve = false;
};

SplitPointEstimate split_point(const EcfCurve& curve);

}  // namespace ecf
