#include "ecfjump/increments.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ecfjump/errors.hpp"
#include "ecfjump/math.hpp"

namespace ecf {

IncrementSample IncrementSample::from_increments(std::vector<double> increments) {
  if (increments.size() < 2)
    raise(Errc::too_few_observations,
          "need at least 2 increments, got " + std::to_string(increments.size()));
  for (double w : increments)
    if (!std::isfinite(w))
      raise(Errc::non_finite_input, "non-finite increment in input");

  IncrementSample s;
  s.values_ = std::move(increments);
  std::sort(s.values_.begin(), s.values_.end());

  const std::size_t n = s.values_.size();
  s.prefix_sum_.resize(n + 1);
  s.prefix_sum_sq_.resize(n + 1);
  s.prefix_sum_[0] = 0.0;
  s.prefix_sum_sq_[0] = 0.0;
  CompensatedSum sum, sum_sq;
  for (std::size_t i = 0; i < n; ++i) {
    sum.add(s.values_[i]);
    sum_sq.add(s.values_[i] * s.values_[i]);
    s.prefix_sum_[i + 1] = sum.value();
    s.prefix_sum_sq_[i + 1] = sum_sq.value();
  }
  return s;
}

IncrementSample make_increments(std::span<const double> observations) {
  if (observations.size() < 3)
    raise(Errc::too_few_observations,
          "need at least 3 observations, got " + std::to_string(observations.size()));
  for (double x : observations)
    if (!std::isfinite(x))
      raise(Errc::non_finite_input, "non-finite observation in input");

  std::vector<double> diffs(observations.size() - 1);
  for (std::size_t i = 0; i + 1 < observations.size(); ++i)
    diffs[i] = observations[i + 1] - observations[i];
  return IncrementSample::from_increments(std::move(diffs));
}

}  // namespace ecf
