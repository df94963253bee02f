#pragma once

#include <cstddef>
#include <cstdint>
#include <variant>
#include <vector>

namespace ecf {

// Jump size laws for the jump-diffusion increment models.
struct NormalSize {
  double tau = 0.0;      // mean jump size
  double eta_var = 1.0;  // jump size variance
};
struct DoubleExponentialSize {
  double location = 0.0;
  double scale = 1.0;
};
struct ConstantSize {
  double h = 0.0;
};
using SizeLaw = std::variant<NormalSize, DoubleExponentialSize, ConstantSize>;

// Jump drivers. `ConstantJumps` is the constant-size compound-Poisson
// special case kept as its own spelling; `Bernoulli` draws at most one jump
// per step with the given per-step probability.
struct NoJumps {};
struct ConstantJumps {
  double h = 0.0;
  double lambda = 0.0;  // expected jumps per unit time
};
struct CompoundPoisson {
  double lambda = 0.0;
  SizeLaw size;
};
struct BernoulliJumps {
  double prob_per_step = 0.0;
  SizeLaw size;
};
using JumpSpec = std::variant<NoJumps, ConstantJumps, CompoundPoisson, BernoulliJumps>;

// Discretely observed drift + diffusion + jump model on the unit horizon,
// observed at n+1 equally spaced times (n increments, spacing 1/n).
// Each increment is exactly N(mu/n, sigma^2/n) plus its step's jump sum.
struct ModelSpec {
  double mu = 0.0;
  double sigma = 1.0;
  std::size_t n = 0;
  JumpSpec jumps = NoJumps{};

  static constexpr double horizon = 1.0;
  double dt() const { return horizon / static_cast<double>(n); }
};

struct PathSample {
  std::vector<double> values;           // n+1 observations, values[0] = 0
  std::vector<std::size_t> jump_steps;  // 1-based steps containing >= 1 jump
  std::size_t jump_count = 0;           // total jumps over the path
};

// Simulates one path. Identical (spec, seed) pairs produce bitwise identical
// samples: draws come from one SplitMix64 stream in fixed step order
// (Gaussian pair first, then the step's jump draws).
PathSample simulate_path(const ModelSpec& spec, std::uint64_t seed);

// Exact density of one increment under `none` or `constant` jumps: the
// Poisson mixture of normals shifted by multiples of the jump height,
// truncated where the Poisson tail drops below 1e-15.
double increment_density(const ModelSpec& spec, double w);

// Two-term reduction of the same density: no-jump and one-jump components
// only, with weights (1 - lambda dt) and lambda dt. The sup gap to the full
// density shrinks like (lambda dt)^2.
double increment_density_two_term(const ModelSpec& spec, double w);

}  // namespace ecf
