#include "ecfjump/sim.hpp"

#include <cmath>

#include "ecfjump/errors.hpp"
#include "ecfjump/math.hpp"
#include "ecfjump/rng.hpp"

namespace ecf {

namespace {

void validate(const ModelSpec& spec) {
  if (spec.n < 2)
    raise(Errc::invalid_argument, "simulate_path: need n >= 2 increments");
  if (!(spec.sigma > 0.0))
    raise(Errc::invalid_argument, "simulate_path: sigma must be > 0");
  if (!std::isfinite(spec.mu))
    raise(Errc::invalid_argument, "simulate_path: mu must be finite");
  if (const auto* cp = std::get_if<CompoundPoisson>(&spec.jumps)) {
    if (cp->lambda < 0.0)
      raise(Errc::invalid_argument, "simulate_path: lambda must be >= 0");
  } else if (const auto* cj = std::get_if<ConstantJumps>(&spec.jumps)) {
    if (cj->lambda < 0.0)
      raise(Errc::invalid_argument, "simulate_path: lambda must be >= 0");
  } else if (const auto* b = std::get_if<BernoulliJumps>(&spec.jumps)) {
    if (b->prob_per_step < 0.0 || b->prob_per_step > 1.0)
      raise(Errc::invalid_argument,
            "simulate_path: per-step probability must lie in [0, 1]");
  }
}

double draw_size(const SizeLaw& law, Rng& rng) {
  if (const auto* n = std::get_if<NormalSize>(&law))
    return rng.gauss(n->tau, std::sqrt(n->eta_var));
  if (const auto* d = std::get_if<DoubleExponentialSize>(&law))
    return rng.laplace(d->location, d->scale);
  return std::get<ConstantSize>(law).h;
}

}  // namespace

PathSample simulate_path(const ModelSpec& spec, std::uint64_t seed) {
  validate(spec);
  const double dt = spec.dt();
  const double drift = spec.mu * dt;
  const double vol = spec.sigma * std::sqrt(dt);

  Rng rng(mix_seed(seed, 0x70617468ULL));
  PathSample path;
  path.values.resize(spec.n + 1);
  path.values[0] = 0.0;

  for (std::size_t i = 1; i <= spec.n; ++i) {
    double w = drift + vol * rng.gauss();

    std::uint64_t jumps_here = 0;
    if (const auto* cj = std::get_if<ConstantJumps>(&spec.jumps)) {
      jumps_here = rng.poisson(cj->lambda * dt);
      w += cj->h * static_cast<double>(jumps_here);
    } else if (const auto* cp = std::get_if<CompoundPoisson>(&spec.jumps)) {
      jumps_here = rng.poisson(cp->lambda * dt);
      for (std::uint64_t j = 0; j < jumps_here; ++j) w += draw_size(cp->size, rng);
    } else if (const auto* b = std::get_if<BernoulliJumps>(&spec.jumps)) {
      if (rng.bernoulli(b->prob_per_step)) {
        jumps_here = 1;
        w += draw_size(b->size, rng);
      }
    }

    if (jumps_here > 0) {
      path.jump_steps.push_back(i);
      path.jump_count += jumps_here;
    }
    path.values[i] = path.values[i - 1] + w;
  }
  return path;
}

namespace {

struct MixtureParams {
  double mean, sd, lambda_star, h;
};

MixtureParams density_params(const ModelSpec& spec) {
  validate(spec);
  MixtureParams p;
  const double dt = spec.dt();
  p.mean = spec.mu * dt;
  p.sd = spec.sigma * std::sqrt(dt);
  if (std::holds_alternative<NoJumps>(spec.jumps)) {
    p.lambda_star = 0.0;
    p.h = 0.0;
  } else if (const auto* cj = std::get_if<ConstantJumps>(&spec.jumps)) {
    p.lambda_star = cj->lambda * dt;
    p.h = cj->h;
  } else {
    raise(Errc::unsupported_parameter,
          "increment_density: closed form available for `none` and `constant` "
          "jump specs only");
  }
  return p;
}

}  // namespace

double increment_density(const ModelSpec& spec, double w) {
  const MixtureParams p = density_params(spec);
  if (p.lambda_star == 0.0) {
    double z = (w - p.mean) / p.sd;
    return norm_pdf(z) / p.sd;
  }
  double f = 0.0;
  double weight = std::exp(-p.lambda_star);  // Poisson mass at k = 0
  for (int k = 0; k < 10000; ++k) {
    double z = (w - p.mean - p.h * static_cast<double>(k)) / p.sd;
    f += weight * norm_pdf(z) / p.sd;
    weight *= p.lambda_star / static_cast<double>(k + 1);
    if (weight < 1e-15) break;
  }
  return f;
}

double increment_density_two_term(const ModelSpec& spec, double w) {
  const MixtureParams p = density_params(spec);
  double z0 = (w - p.mean) / p.sd;
  double z1 = (w - p.mean - p.h) / p.sd;
  return (1.0 - p.lambda_star) * norm_pdf(z0) / p.sd +
         p.lambda_star * norm_pdf(z1) / p.sd;
}

}  // namespace ecf
