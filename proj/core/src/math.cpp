#include "ecfjump/math.hpp"

#include <boost/math/distributions/normal.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "ecfjump/errors.hpp"

namespace ecf {

double norm_quantile(double p) {
  if (!(p > 0.0 && p < 1.0))
    raise(Errc::invalid_argument, "norm_quantile: p must lie in (0, 1)");
  static const boost::math::normal_distribution<double> dist;
  return boost::math::quantile(dist, p);
}

double abs_moment_even(int p) {
  if (p < 0 || p % 2 != 0)
    raise(Errc::unsupported_parameter, "abs_moment_even: p must be even and >= 0");
  // (p - 1)!! for even p.
  double m = 1.0;
  for (int k = p - 1; k > 1; k -= 2) m *= k;
  return m;
}

double integrate(const std::function<double(double)>& f, double a, double b) {
  using boost::math::quadrature::gauss_kronrod;
  return gauss_kronrod<double, 15>::integrate(f, a, b, 12, 1e-12);
}

}  // namespace ecf
