#include "ecfjump/theory.hpp"

#include <algorithm>
#include <cmath>

#include "ecfjump/errors.hpp"
#include "ecfjump/math.hpp"

namespace ecf {

PopulationLaw PopulationLaw::normal(double mean, double sd) {
  if (!(sd > 0.0)) raise(Errc::invalid_argument, "normal law: sd must be > 0");
  PopulationLaw law;
  law.components_.push_back({1.0, mean, sd});
  return law;
}

PopulationLaw PopulationLaw::mixture2(double weight1, double mean1, double sd1,
                                      double mean2, double sd2) {
  if (!(weight1 > 0.0 && weight1 < 1.0))
    raise(Errc::invalid_argument, "mixture law: weight must lie in (0, 1)");
  if (!(sd1 > 0.0) || !(sd2 > 0.0))
    raise(Errc::invalid_argument, "mixture law: sds must be > 0");
  PopulationLaw law;
  law.components_.push_back({weight1, mean1, sd1});
  law.components_.push_back({1.0 - weight1, mean2, sd2});
  return law;
}

double PopulationLaw::pdf(double x) const {
  double f = 0.0;
  for (const auto& c : components_)
    f += c.weight * norm_pdf((x - c.mean) / c.sd) / c.sd;
  return f;
}

double PopulationLaw::cdf(double x) const {
  double f = 0.0;
  for (const auto& c : components_)
    f += c.weight * norm_cdf((x - c.mean) / c.sd);
  return f;
}

double PopulationLaw::quantile(double p) const {
  if (!(p > 0.0 && p < 1.0))
    raise(Errc::invalid_argument, "quantile: p must lie in (0, 1)");
  double lo = support_lo(), hi = support_hi();
  for (int i = 0; i < 200 && hi - lo > 1e-14 * (1.0 + std::abs(lo)); ++i) {
    double mid = 0.5 * (lo + hi);
    (cdf(mid) < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double PopulationLaw::mean() const {
  double m = 0.0;
  for (const auto& c : components_) m += c.weight * c.mean;
  return m;
}

double PopulationLaw::partial_first_moment(double q) const {
  double m = 0.0;
  for (const auto& c : components_) {
    double z = (q - c.mean) / c.sd;
    m += c.weight * (c.mean * norm_cdf(z) - c.sd * norm_pdf(z));
  }
  return m;
}

double PopulationLaw::partial_second_moment(double q) const {
  double m = 0.0;
  for (const auto& c : components_) {
    double z = (q - c.mean) / c.sd;
    m += c.weight * ((c.mean * c.mean + c.sd * c.sd) * norm_cdf(z) -
                     c.sd * (c.mean + q) * norm_pdf(z));
  }
  return m;
}

double PopulationLaw::support_lo() const {
  double lo = components_.front().mean - 10.0 * components_.front().sd;
  for (const auto& c : components_) lo = std::min(lo, c.mean - 10.0 * c.sd);
  return lo;
}

double PopulationLaw::support_hi() const {
  double hi = components_.front().mean + 10.0 * components_.front().sd;
  for (const auto& c : components_) hi = std::max(hi, c.mean + 10.0 * c.sd);
  return hi;
}

double crossover_G(const PopulationLaw& law, double p) {
  if (!(p > 0.0 && p < 1.0))
    raise(Errc::invalid_argument, "crossover_G: p must lie in (0, 1)");
  double q = law.quantile(p);
  double below = law.partial_first_moment(q);
  double above = law.mean() - below;
  return below / p + above / (1.0 - p) - 2.0 * q;
}

double g_prime(const PopulationLaw& law, double p) {
  if (!(p > 0.0 && p < 1.0))
    raise(Errc::invalid_argument, "g_prime: p must lie in (0, 1)");
  double q = law.quantile(p);
  double below = law.partial_first_moment(q);
  double above = law.mean() - below;
  double q_slope = 1.0 / law.pdf(q);
  return (q - below / p) / p - (q - above / (1.0 - p)) / (1.0 - p) -
         2.0 * q_slope;
}

SplitTheory split_theory(const PopulationLaw& law) {
  double lo = 0.01, hi = 0.99;
  double g_lo = crossover_G(law, lo), g_hi = crossover_G(law, hi);
  if (!(g_lo > 0.0) || !(g_hi < 0.0))
    raise(Errc::no_root_bracket,
          "split_theory: cross-over function does not change sign on [0.01, 0.99]");
  for (int i = 0; i < 200 && hi - lo > 1e-12; ++i) {
    double mid = 0.5 * (lo + hi);
    (crossover_G(law, mid) > 0.0 ? lo : hi) = mid;
  }

  SplitTheory out;
  out.p0 = 0.5 * (lo + hi);
  out.g_prime_at_p0 = g_prime(law, out.p0);

  const double p0 = out.p0;
  const double q = law.quantile(p0);
  const double c = 1.0 / law.pdf(q);
  auto theta = [&](double w) {
    if (w < q) return (w - q) / p0 + 2.0 * c;
    return (w - q) / (1.0 - p0);
  };
  // The influence function is discontinuous at the split quantile; integrate
  // the two smooth pieces separately.
  auto moment = [&](int power) {
    auto f = [&](double w) {
      double t = theta(w);
      return (power == 1 ? t : t * t) * law.pdf(w);
    };
    return integrate(f, law.support_lo(), q) + integrate(f, q, law.support_hi());
  };
  double m1 = moment(1);
  double m2 = moment(2);
  out.theta_var = m2 - m1 * m1;
  out.asymptotic_var = out.theta_var / (out.g_prime_at_p0 * out.g_prime_at_p0);
  return out;
}

}  // namespace ecf
