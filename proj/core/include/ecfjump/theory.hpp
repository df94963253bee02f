#pragma once

#include <vector>

namespace ecf {

// Population laws for which the cross-over function and the split-point CLT
// quantities have closed or reliably computable forms: normals and
// two-component normal mixtures.
class PopulationLaw {
 public:
  static PopulationLaw normal(double mean, double sd);
  static PopulationLaw mixture2(double weight1, double mean1, double sd1,
                                double mean2, double sd2);

  double pdf(double x) const;
  double cdf(double x) const;
  // Inverse CDF by bisection on a bracket spanning all components.
  double quantile(double p) const;
  double mean() const;
  // E[W 1{W <= q}] from the truncated-normal first moment per component.
  double partial_first_moment(double q) const;
  // E[W^2 1{W <= q}].
  double partial_second_moment(double q) const;

  // Integration support: [lowest mean - 10 sd, highest mean + 10 sd].
  double support_lo() const;
  double support_hi() const;

 private:
  struct Component {
    double weight, mean, sd;
  };
  std::vector<Component> components_;
};

// Population cross-over function
//   G(p) = E[W | W <= Q(p)] + E[W | W > Q(p)] - 2 Q(p)
// evaluated through partial moments. Decreasing through its root.
double crossover_G(const PopulationLaw& law, double p);

// Derivative of G:
//   (1/p)[Q - E[W 1{W<=Q}]/p] - (1/(1-p))[Q - E[W 1{W>Q}]/(1-p)] - 2/f(Q).
double g_prime(const PopulationLaw& law, double p);

struct SplitTheory {
  double p0 = 0.0;            // root of G
  double g_prime_at_p0 = 0.0;
  double theta_var = 0.0;     // variance of the influence function at p0
  double asymptotic_var = 0.0;  // theta_var / g_prime^2, variance of sqrt(n)(p_n - p0)
};

// Root of G by bisection (fails loudly if [0.01, 0.99] does not bracket a
// sign change), then the CLT variance by adaptive quadrature of the
// influence-function moments.
SplitTheory split_theory(const PopulationLaw& law);

}  // namespace ecf
