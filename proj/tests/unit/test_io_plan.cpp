#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "ecfjump/ecf.hpp"
#include "ecfjump/errors.hpp"
#include "ecfjump/io.hpp"
#include "ecfjump/plan.hpp"
#include "ecfjump/rng.hpp"
#include "ecfjump/sim.hpp"

#include "test_helpers.hpp"

namespace {

ecf::PriceSeries load_string(const std::string& text,
                             ecf::Transform transform = ecf::Transform::log_diff,
                             const ecf::CsvOptions& options = {}) {
  std::istringstream in(text);
  return ecf::load_price_csv(in, transform, options);
}

ecf::Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const ecf::Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ecf::Errc::invalid_argument;
}

}  // namespace

TEST_CASE("csv loader happy path") {
  auto s = load_string(
      "date,value\n"
      "2020-01-01,100\n"
      "2020-01-02,101.5\n"
      "2020-01-03,99.25\n"
      "2020-01-06,100.75\n");
  REQUIRE(s.values.size() == 4);
  CHECK(s.skipped_rows == 0);
  CHECK(s.dates.front() == "2020-01-01");
  CHECK(s.values[1] == 101.5);
  auto w = ecf::series_increments(s);
  REQUIRE(w.size() == 3);
  CHECK(w[0] == Catch::Approx(std::log(101.5 / 100.0)).epsilon(1e-12));
  s.transform = ecf::Transform::raw_diff;
  auto d = ecf::series_increments(s);
  CHECK(d[0] == Catch::Approx(1.5));
}

TEST_CASE("csv loader handles BOM, blank lines and extra columns") {
  auto s = load_string(
      "\xEF\xBB\xBFticker,date,value\n"
      "SPX,2020-01-01,100\n"
      "\n"
      "SPX,2020-01-02,101\n"
      "SPX,2020-01-03,102\n");
  CHECK(s.values.size() == 3);
  CHECK(s.skipped_rows == 0);
}

TEST_CASE("missing markers are skipped and counted") {
  auto s = load_string(
      "date,value\n"
      "2020-01-01,100\n"
      "2020-01-02,.\n"
      "2020-01-03,NA\n"
      "2020-01-04,101\n"
      "2020-01-05,\n"
      "2020-01-06,102\n"
      "2020-01-07,garbage\n"
      "2020-01-08,103\n",
      ecf::Transform::log_diff, {"date", "value", 0.6});
  CHECK(s.values.size() == 4);
  CHECK(s.skipped_rows == 4);
}

TEST_CASE("one blank row in a thousand passes the default threshold") {
  std::ostringstream text;
  text << "date,value\n";
  long serial = ecf::parse_date("2000-01-01");
  for (int i = 0; i < 1000; ++i) {
    text << ecf::format_date(serial + i) << ',';
    if (i == 500) {
      text << "\n";
    } else {
      text << (100.0 + i) << "\n";
    }
  }
  auto s = load_string(text.str());
  CHECK(s.values.size() == 999);
  CHECK(s.skipped_rows == 1);
}

TEST_CASE("too many unusable rows fail loudly") {
  CHECK(code_of([] {
          load_string(
              "date,value\n"
              "2020-01-01,100\n"
              "2020-01-02,NA\n"
              "2020-01-03,NA\n"
              "2020-01-04,101\n"
              "2020-01-05,102\n");
        }) == ecf::Errc::data_format);
}

TEST_CASE("loader rejects structural problems") {
  CHECK(code_of([] { load_string(""); }) == ecf::Errc::data_format);
  CHECK(code_of([] { load_string("date,value\n"); }) == ecf::Errc::data_format);
  CHECK(code_of([] {
          load_string("day,value\n2020-01-01,1\n");
        }) == ecf::Errc::data_format);
  CHECK(code_of([] {
          load_string("date,price\n2020-01-01,1\n");
        }) == ecf::Errc::data_format);
  // Non-increasing dates.
  CHECK(code_of([] {
          load_string(
              "date,value\n"
              "2020-01-02,100\n"
              "2020-01-02,101\n"
              "2020-01-03,102\n");
        }) == ecf::Errc::data_format);
  CHECK(code_of([] {
          load_string(
              "date,value\n"
              "2020-01-02,100\n"
              "2020-01-01,101\n"
              "2020-01-03,102\n");
        }) == ecf::Errc::data_format);
  // Bad calendar dates are skipped, not fatal; but then too much is missing.
  CHECK(code_of([] {
          load_string(
              "date,value\n"
              "2020-02-30,100\n"
              "2020-03-01,101\n"
              "2020-03-02,102\n");
        }) == ecf::Errc::data_format);
  // log_diff rejects non-positive prices.
  CHECK(code_of([] {
          load_string(
              "date,value\n"
              "2020-01-01,100\n"
              "2020-01-02,-5\n"
              "2020-01-03,102\n");
        }) == ecf::Errc::non_positive_price);
  // Fewer than 3 usable rows.
  CHECK(code_of([] {
          load_string(
              "date,value\n"
              "2020-01-01,100\n"
              "2020-01-02,101\n");
        }) == ecf::Errc::too_few_observations);
}

TEST_CASE("custom column names select the right cells") {
  ecf::CsvOptions options;
  options.date_column = "Date";
  options.value_column = "Close";
  std::istringstream in(
      "Date,Open,Close\n"
      "2020-01-01,9,100\n"
      "2020-01-02,9,101\n"
      "2020-01-03,9,102\n");
  auto s = ecf::load_price_csv(in, ecf::Transform::log_diff, options);
  CHECK(s.values == std::vector<double>{100.0, 101.0, 102.0});
}

TEST_CASE("g17 formatting round trips doubles bitwise") {
  ecf::Rng rng(5);
  for (int i = 0; i < 1000; ++i) {
    double x = std::exp(20.0 * (rng.uniform() - 0.5)) * (rng.gauss());
    double back = std::strtod(ecf::format_g17(x).c_str(), nullptr);
    REQUIRE(back == x);
  }
  CHECK(ecf::format_g17(0.25) == "0.25");
  CHECK(ecf::format_g17(-4.25) == "-4.25");
}

TEST_CASE("curve csv golden for the four point sample") {
  auto curve = ecf::compute_ecf(
      ecf::IncrementSample::from_increments({1.0, 2.0, 4.0, 8.0}));
  std::ostringstream out;
  ecf::write_ecf_csv(out, curve);
  CHECK(out.str() ==
        "p,g_n\n"
        "0.25,2.666666666666667\n"
        "0.5,1.5\n"
        "0.75,-1.6666666666666661\n"
        "terminal,-4.25\n");
}

TEST_CASE("path csv round trips through the loader") {
  ecf::ModelSpec spec;
  spec.mu = 0.5;
  spec.sigma = 1.0;
  spec.n = 200;
  spec.jumps = ecf::CompoundPoisson{5.0, ecf::NormalSize{2.0, 1.0}};
  auto path = ecf::simulate_path(spec, 99);
  std::ostringstream out;
  ecf::write_path_csv(out, path);

  std::istringstream in(out.str());
  auto series = ecf::load_price_csv(in, ecf::Transform::raw_diff);
  REQUIRE(series.values.size() == path.values.size());
  auto w = ecf::series_increments(series);
  for (std::size_t i = 0; i + 1 < path.values.size(); ++i) {
    REQUIRE(w[i] == path.values[i + 1] - path.values[i]);
  }

  // Jump flags land on the marked rows.
  std::istringstream again(out.str());
  std::string line;
  std::getline(again, line);
  CHECK(line == "date,value,jump");
  std::size_t row = 0;
  std::vector<std::size_t> flagged;
  while (std::getline(again, line)) {
    if (line.size() >= 2 && line.substr(line.size() - 2) == ",1")
      flagged.push_back(row);
    ++row;
  }
  CHECK(flagged == path.jump_steps);
}

TEST_CASE("date helpers invert each other") {
  CHECK(ecf::parse_date("1970-01-01") == 0);
  CHECK(ecf::format_date(0) == "1970-01-01");
  const long serial = ecf::parse_date("1996-01-02");
  CHECK(ecf::format_date(serial) == "1996-01-02");
  CHECK(ecf::parse_date("1996-01-03") == serial + 1);
  CHECK_THROWS_AS(ecf::parse_date("96-01-02"), ecf::Error);
  CHECK_THROWS_AS(ecf::parse_date("1996-13-02"), ecf::Error);
}

TEST_CASE("transform names parse both spellings") {
  CHECK(ecf::parse_transform("raw_diff") == ecf::Transform::raw_diff);
  CHECK(ecf::parse_transform("raw-diff") == ecf::Transform::raw_diff);
  CHECK(ecf::parse_transform("log_diff") == ecf::Transform::log_diff);
  CHECK(ecf::parse_transform("log-diff") == ecf::Transform::log_diff);
  CHECK_THROWS_AS(ecf::parse_transform("sqrt"), ecf::Error);
  CHECK(std::string(ecf::transform_name(ecf::Transform::log_diff)) ==
        "log_diff");
}

TEST_CASE("plan parser builds the cell grid in file order") {
  std::istringstream in(
      "# comment line\n"
      "[plan]\n"
      "name = demo\n"
      "kind = power\n"
      "replications = 7\n"
      "alpha = 0.10   # trailing comment\n"
      "seed = 99\n"
      "tests = cluster st\n"
      "[grid]\n"
      "n = 100 200\n"
      "[model]\n"
      "mu = 2\n"
      "sigma = 1.5\n"
      "[jumps.cp]\n"
      "kind = compound-poisson\n"
      "lambda = 0.2\n"
      "size = normal\n"
      "mean = 10\n"
      "var = 2\n"
      "[jumps.bern]\n"
      "kind = bernoulli\n"
      "lambda = 0.2\n"
      "size = constant\n"
      "height = 4\n");
  auto plan = ecf::parse_plan(in);
  CHECK(plan.name == "demo");
  CHECK(plan.kind == ecf::StudyKind::power);
  CHECK(plan.replications == 7);
  CHECK(plan.alpha == 0.10);
  CHECK(plan.base_seed == 99);
  CHECK(plan.run_cluster);
  CHECK(plan.run_st);
  REQUIRE(plan.cells.size() == 4);
  CHECK(plan.cells[0].label == "n=100,jumps=cp");
  CHECK(plan.cells[1].label == "n=200,jumps=cp");
  CHECK(plan.cells[2].label == "n=100,jumps=bern");
  CHECK(plan.cells[3].label == "n=200,jumps=bern");
  CHECK(plan.cells[0].model.mu == 2.0);
  CHECK(plan.cells[0].model.sigma == 1.5);
  const auto& cp =
      std::get<ecf::CompoundPoisson>(plan.cells[0].model.jumps);
  CHECK(cp.lambda == 0.2);
  CHECK(std::get<ecf::NormalSize>(cp.size).tau == 10.0);
  // Bernoulli intensity becomes a per-step probability lambda / n.
  const auto& b100 =
      std::get<ecf::BernoulliJumps>(plan.cells[2].model.jumps);
  CHECK(b100.prob_per_step == Catch::Approx(0.2 / 100.0).epsilon(1e-14));
  const auto& b200 =
      std::get<ecf::BernoulliJumps>(plan.cells[3].model.jumps);
  CHECK(b200.prob_per_step == Catch::Approx(0.2 / 200.0).epsilon(1e-14));
}

TEST_CASE("power curve plans sweep exactly one parameter") {
  std::istringstream in(
      "[plan]\n"
      "name = curve\n"
      "kind = power-curve\n"
      "replications = 3\n"
      "[grid]\n"
      "n = 50\n"
      "tau = 0 1 2.5\n"
      "[jumps]\n"
      "kind = compound-poisson\n"
      "lambda = 1\n"
      "size = normal\n"
      "var = 1\n");
  auto plan = ecf::parse_plan(in);
  CHECK(plan.kind == ecf::StudyKind::power_curve);
  CHECK(plan.param_name == "tau");
  REQUIRE(plan.cells.size() == 3);
  CHECK(plan.cells[0].label == "n=50,tau=0");
  CHECK(plan.cells[2].label == "n=50,tau=2.5");
  CHECK(plan.cells[1].param == 1.0);
  const auto& cp = std::get<ecf::CompoundPoisson>(plan.cells[2].model.jumps);
  CHECK(std::get<ecf::NormalSize>(cp.size).tau == 2.5);
}

TEST_CASE("plan errors carry line numbers and reject misuse") {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return ecf::parse_plan(in);
  };
  auto expect_data_format = [&](const std::string& text,
                                const std::string& needle) {
    try {
      parse(text);
      FAIL("expected data_format for: " << needle);
    } catch (const ecf::Error& e) {
      CHECK(e.code() == ecf::Errc::data_format);
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };

  const std::string head =
      "[plan]\nname = x\nkind = level\nreplications = 1\n";
  expect_data_format(head + "[grid]\nn = 100\nbogus = 1\n", "unknown key");
  expect_data_format(head + "junk = 2\n[grid]\nn = 100\n", "unknown key");
  expect_data_format(head + "[grid]\nn = 100\nn = 200\n", "duplicate key");
  expect_data_format(head + "[grid]\nn = 100\n[grid]\nn = 5\n",
                     "duplicate section");
  expect_data_format(head + "[weird]\nn = 100\n", "unknown section");
  expect_data_format(head + "[grid]\nn = 2\n", "at least 3");
  expect_data_format("x = 1\n", "outside any section");
  expect_data_format("[plan]\nname = x\nkind = bad\nreplications = 1\n"
                     "[grid]\nn = 10\n",
                     "unknown study kind");
  expect_data_format(head + "[grid]\nn = 10\n[jumps]\nkind = bernoulli\n"
                     "prob = 0.1\nlambda = 2\nsize = constant\nheight = 1\n",
                     "exactly one of");
  expect_data_format(head + "[grid]\nn = 10\n[jumps]\nkind = bernoulli\n"
                     "size = constant\nheight = 1\n",
                     "exactly one of");
  // Sweep conflicts.
  expect_data_format(
      "[plan]\nname = x\nkind = power-curve\nreplications = 1\n"
      "[grid]\nn = 10\ntau = 1 2\neta = 1\n[jumps]\nkind = compound-poisson\n"
      "lambda = 1\nsize = normal\nvar = 1\n",
      "exactly one of");
  expect_data_format(
      "[plan]\nname = x\nkind = power-curve\nreplications = 1\n"
      "[grid]\nn = 10\ntau = 1 2\n[jumps]\nkind = compound-poisson\n"
      "lambda = 1\nsize = normal\nmean = 3\nvar = 1\n",
      "conflicts with the tau sweep");
  expect_data_format(
      "[plan]\nname = x\nkind = power-curve\nreplications = 1\n"
      "[grid]\nn = 10\ntau = 1 2\n[jumps]\nkind = constant\n"
      "lambda = 1\nheight = 2\n",
      "size = normal");
  // Missing sections.
  CHECK(code_of([&] { parse("[grid]\nn = 10\n"); }) == ecf::Errc::data_format);
  CHECK(code_of([&] { parse("[plan]\nname = x\nkind = level\n"
                            "replications = 1\n"); }) ==
        ecf::Errc::data_format);
}

TEST_CASE("plans without jump sections default to a jump free cell") {
  std::istringstream in(
      "[plan]\nname = lv\nkind = level\nreplications = 2\n"
      "[grid]\nn = 20 30\n");
  auto plan = ecf::parse_plan(in);
  REQUIRE(plan.cells.size() == 2);
  CHECK(plan.cells[0].label == "n=20,jumps=none");
  CHECK(std::holds_alternative<ecf::NoJumps>(plan.cells[0].model.jumps));
  CHECK(plan.run_cluster);
  CHECK_FALSE(plan.run_st);
}

TEST_CASE("shipped plan files parse") {
  for (const char* name :
       {"plans/table1-desk.plan", "plans/table1-full.plan",
        "plans/table2-desk.plan", "plans/table2-full.plan",
        "plans/fig4-tau.plan", "plans/fig4-eta.plan", "plans/fig3-raw.plan"}) {
    auto plan = ecf::parse_plan_file(testsupport::repo_path(name));
    CHECK(!plan.cells.empty());
  }
}
