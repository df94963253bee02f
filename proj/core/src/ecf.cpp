#include "ecfjump/ecf.hpp"

#include <algorithm>
#include <string>

#include "ecfjump/errors.hpp"

namespace ecf {

EcfCurve compute_ecf(const IncrementSample& sample) {
  const std::size_t n = sample.size();
  EcfCurve curve;
  curve.n = n;
  curve.grid.resize(n - 1);
  for (std::size_t k = 1; k <= n - 1; ++k) {
    double lower_mean = sample.prefix_sum(k) / static_cast<double>(k);
    double upper_mean = sample.upper_sum(k) / static_cast<double>(n - k);
    curve.grid[k - 1] =
        lower_mean - sample.order_stat(k) + upper_mean - sample.order_stat(k + 1);
  }
  curve.terminal = sample.total_sum() / static_cast<double>(n) - sample.order_stat(n);
  return curve;
}

SplitPointEstimate split_point(const EcfCurve& curve) {
  const std::size_t n = curve.n;
  if (n < 2 || curve.grid.size() != n - 1)
    raise(Errc::invalid_argument, "split_point: malformed curve");

  SplitPointEstimate est;

  bool all_negative = true;
  bool all_positive = true;
  bool all_zero = true;
  for (double g : curve.grid) {
    if (g >= 0.0) all_negative = false;
    if (g <= 0.0) all_positive = false;
    if (g != 0.0) all_zero = false;
  }

  if (all_negative) {
    est.p_n = 0.0;
    est.boundary = Boundary::all_negative;
    return est;
  }
  if (all_positive) {
    est.p_n = 1.0;
    est.boundary = Boundary::all_positive;
    return est;
  }

  // Value at k/n seen from grid index k: grid[k] for k < n-1, else terminal.
  auto value_after = [&](std::size_t k) {
    return k < n - 1 ? curve.grid[k] : curve.terminal;
  };
  std::size_t crossing = 0;
  for (std::size_t k = 1; k <= n - 1; ++k) {
    if (curve.grid[k - 1] * value_after(k) <= 0.0) crossing = k;
  }
  if (crossing == 0)
    raise(Errc::degenerate_split, "split_point: no sign change on the curve");

  est.p_n = static_cast<double>(crossing) / static_cast<double>(n);
  est.crossing_index = crossing;
  est.degenerate_zero_curve = all_zero;
  return est;
}

}  // namespace ecf
