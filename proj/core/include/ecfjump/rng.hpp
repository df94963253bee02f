#pragma once

#include <cmath>
#include <cstdint>

namespace ecf {

// Deterministic random streams for simulation and Monte Carlo work.
//
// The generator is SplitMix64. Streams are derived, never shared: a path
// simulation owns one stream seeded from its (spec, seed) pair, and the
// experiment harness derives one seed per replication as
//   derive_seed(base_seed, cell_index, replication_index)
// so results are independent of scheduling and worker count.

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
  return splitmix64(s);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t cell,
                                 std::uint64_t replication) {
  return mix_seed(mix_seed(base, cell), replication);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() { return splitmix64(state_); }

  // Uniform on (0, 1), never exactly 0 or 1.
  double uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller; the pair is cached.
  double gauss() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 6.2831853071795864769 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  double gauss(double mean, double sd) { return mean + sd * gauss(); }

  // Poisson by CDF inversion; intended for small and moderate means.
  std::uint64_t poisson(double mean) {
    if (mean <= 0.0) return 0;
    double u = uniform();
    double p = std::exp(-mean);
    double cdf = p;
    std::uint64_t k = 0;
    while (u > cdf && k < 10000) {
      ++k;
      p *= mean / static_cast<double>(k);
      cdf += p;
    }
    return k;
  }

  bool bernoulli(double prob) { return uniform() < prob; }

  double laplace(double location, double scale) {
    double u = uniform() - 0.5;
    double sign = u < 0.0 ? -1.0 : 1.0;
    return location - scale * sign * std::log(1.0 - 2.0 * std::abs(u));
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace ecf
