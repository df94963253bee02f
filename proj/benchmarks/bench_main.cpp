#include <benchmark/benchmark.h>

#include <vector>

#include "ecfjump/ecf.hpp"
#include "ecfjump/increments.hpp"
#include "ecfjump/jump_test.hpp"
#include "ecfjump/rng.hpp"
#include "ecfjump/sim.hpp"
#include "ecfjump/st_test.hpp"

namespace {

std::vector<double> gauss_path(std::size_t n, std::uint64_t seed) {
  ecf::Rng rng(seed);
  std::vector<double> values(n + 1, 0.0);
  for (std::size_t i = 1; i <= n; ++i)
    values[i] = values[i - 1] + rng.gauss();
  return values;
}

void bm_curve_pipeline(benchmark::State& state) {
  const auto path = gauss_path(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) {
    auto sample = ecf::make_increments(path);
    auto split = ecf::split_point(ecf::compute_ecf(sample));
    benchmark::DoNotOptimize(split.p_n);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(bm_curve_pipeline)->Range(1 << 8, 1 << 16)->Complexity();

void bm_jump_test(benchmark::State& state) {
  const auto path = gauss_path(static_cast<std::size_t>(state.range(0)), 2);
  const auto sample = ecf::make_increments(path);
  for (auto _ : state) {
    auto r = ecf::jump_test(sample);
    benchmark::DoNotOptimize(r.statistic);
  }
}
BENCHMARK(bm_jump_test)->Arg(1000)->Arg(5000)->Arg(50000);

void bm_simulate_path(benchmark::State& state) {
  ecf::ModelSpec spec;
  spec.mu = 2.0;
  spec.sigma = 1.0;
  spec.n = static_cast<std::size_t>(state.range(0));
  spec.jumps = ecf::CompoundPoisson{0.2, ecf::NormalSize{10.0, 2.0}};
  std::uint64_t seed = 0;
  for (auto _ : state) {
    auto path = ecf::simulate_path(spec, ++seed);
    benchmark::DoNotOptimize(path.values.back());
  }
}
BENCHMARK(bm_simulate_path)->Arg(1000)->Arg(5000)->Arg(50000);

void bm_st_test(benchmark::State& state) {
  const auto path = gauss_path(static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) {
    auto r = ecf::st_test(path, 4.0, 2, 0.05);
    benchmark::DoNotOptimize(r.standardized);
  }
}
BENCHMARK(bm_st_test)->Arg(1000)->Arg(5000)->Arg(50000);

}  // namespace

BENCHMARK_MAIN();
