#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "ecfjump/errors.hpp"
#include "ecfjump/sim.hpp"
#include "ecfjump/st_test.hpp"

TEST_CASE("moment constant closed forms") {
  // k=2, p=4: term1 = 4 * 3 * 105 = 1260, term2 = 4 * 1 * 9 = 36,
  // cross = 105 + 90 + 9 = 204, term3 = 2 * 2 * 204 = 816,
  // M = (1260 + 36 - 816) / 9 = 480 / 9.
  CHECK(ecf::st_moment_constant(4.0, 2) ==
        Catch::Approx(480.0 / 9.0).epsilon(1e-14));
  // k=3: term1 = 9 * 4 * 105 = 3780, term2 = 9 * 2 * 9 = 162,
  // cross = 105 + 180 + 36 = 321, term3 = 2 * 3 * 321 = 1926,
  // M = (3780 + 162 - 1926) / 9 = 2016 / 9 = 224.
  CHECK(ecf::st_moment_constant(4.0, 3) == Catch::Approx(224.0).epsilon(1e-14));
  CHECK_THROWS_AS(ecf::st_moment_constant(4.0, 1), ecf::Error);
  CHECK_THROWS_AS(ecf::st_moment_constant(2.0, 2), ecf::Error);
}

TEST_CASE("ratio near k on a continuous path") {
  ecf::ModelSpec spec;
  spec.sigma = 1.0;
  spec.n = 50000;
  auto path = ecf::simulate_path(spec, 17);
  auto r = ecf::st_test(path.values, 4.0, 2, 0.05);
  CHECK(r.null_value == 2.0);
  CHECK(r.ratio == Catch::Approx(2.0).margin(0.15));
  CHECK(std::abs(r.standardized) < 4.0);
  CHECK(r.k == 2);
  CHECK(r.p == 4.0);
}

TEST_CASE("ratio collapses toward one under dominant jumps") {
  // Truncation keeps the jump terms out of the variance plug-in, so the
  // standardizer retains its diffusive scale and the collapsed ratio turns
  // into a decisive statistic.
  ecf::ModelSpec spec;
  spec.sigma = 1.0;
  spec.n = 20000;
  spec.jumps = ecf::CompoundPoisson{80.0, ecf::NormalSize{10.0, 2.0}};
  auto path = ecf::simulate_path(spec, 23);
  auto r = ecf::st_test(path.values, 4.0, 2, 0.05);
  CHECK(r.ratio < 1.4);
  CHECK(r.decision == ecf::Decision::jumps);
  CHECK(r.standardized < -3.0);
  CHECK(r.p_value < 0.01);

  // Even a lone dominant jump is decisive: it owns the ratio but is cut
  // from the variance sums.
  spec.jumps = ecf::NoJumps{};
  auto values = ecf::simulate_path(spec, 29).values;
  for (std::size_t i = 10000; i < values.size(); ++i) values[i] += 50.0;
  auto lone = ecf::st_test(values, 4.0, 2, 0.05);
  CHECK(lone.ratio < 1.2);
  CHECK(lone.decision == ecf::Decision::jumps);
  CHECK(lone.standardized < -3.0);
  CHECK(lone.variance < 0.01);
}

TEST_CASE("statistic is scale invariant") {
  ecf::ModelSpec spec;
  spec.sigma = 1.0;
  spec.n = 3000;
  auto path = ecf::simulate_path(spec, 31);
  auto r0 = ecf::st_test(path.values, 4.0, 2, 0.05);
  std::vector<double> scaled;
  for (double v : path.values) scaled.push_back(1e-4 * v);
  auto r1 = ecf::st_test(scaled, 4.0, 2, 0.05);
  CHECK(r1.ratio == Catch::Approx(r0.ratio).margin(1e-12));
  CHECK(r1.standardized == Catch::Approx(r0.standardized).margin(1e-9));
}

TEST_CASE("coarse blocks with k=3 keep their own null value") {
  ecf::ModelSpec spec;
  spec.sigma = 1.0;
  spec.n = 30000;
  auto path = ecf::simulate_path(spec, 41);
  auto r = ecf::st_test(path.values, 4.0, 3, 0.05);
  CHECK(r.null_value == 3.0);
  CHECK(r.ratio == Catch::Approx(3.0).margin(0.4));
  CHECK(std::abs(r.standardized) < 4.0);
}

TEST_CASE("validation and degenerate input") {
  std::vector<double> obs = {0.0, 1.0, 0.5, 2.0, 1.5, 2.5, 3.0, 2.0};
  try {
    ecf::st_test(obs, 4.0, 2, 0.0);
    FAIL("expected invalid_argument");
  } catch (const ecf::Error& e) {
    CHECK(e.code() == ecf::Errc::invalid_argument);
  }
  try {
    ecf::st_test(obs, 2.0, 2, 0.05);
    FAIL("expected unsupported_parameter");
  } catch (const ecf::Error& e) {
    CHECK(e.code() == ecf::Errc::unsupported_parameter);
  }
  try {
    ecf::st_test(obs, 4.0, 1, 0.05);
    FAIL("expected invalid_argument");
  } catch (const ecf::Error& e) {
    CHECK(e.code() == ecf::Errc::invalid_argument);
  }
  std::vector<double> tiny = {0.0, 1.0, 0.5, 2.0};
  try {
    ecf::st_test(tiny, 4.0, 2, 0.05);
    FAIL("expected too_few_observations");
  } catch (const ecf::Error& e) {
    CHECK(e.code() == ecf::Errc::too_few_observations);
  }
  std::vector<double> flat(20, 1.0);
  try {
    ecf::st_test(flat, 4.0, 2, 0.05);
    FAIL("expected zero_power_variation");
  } catch (const ecf::Error& e) {
    CHECK(e.code() == ecf::Errc::zero_power_variation);
  }
}

TEST_CASE("one sided p value orientation") {
  // A strongly negative statistic must give a small p value, a positive one
  // a large p value; the decision only fires on the low side.
  ecf::ModelSpec spec;
  spec.sigma = 1.0;
  spec.n = 20000;
  spec.jumps = ecf::CompoundPoisson{80.0, ecf::NormalSize{10.0, 2.0}};
  auto jumpy = ecf::st_test(ecf::simulate_path(spec, 2).values, 4.0, 2, 0.05);
  CHECK(jumpy.p_value < 0.05);
  spec.jumps = ecf::NoJumps{};
  auto calm = ecf::st_test(ecf::simulate_path(spec, 3).values, 4.0, 2, 0.05);
  CHECK(calm.p_value > 0.05);
}
