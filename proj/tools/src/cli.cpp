#include "cli.hpp"

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ecfjump/ecf.hpp"
#include "ecfjump/errors.hpp"
#include "ecfjump/experiments.hpp"
#include "ecfjump/increments.hpp"
#include "ecfjump/io.hpp"
#include "ecfjump/jump_test.hpp"
#include "ecfjump/plan.hpp"
#include "ecfjump/sim.hpp"
#include "ecfjump/st_test.hpp"

namespace ecf::cli {

namespace {

using json = nlohmann::ordered_json;

int exit_code_for(Errc c) {
  if (c == Errc::invalid_argument || c == Errc::unsupported_parameter) return 1;
  return is_data_error(c) ? 2 : 3;
}

void emit_error(std::ostream& err, const std::string& name,
                const std::string& message) {
  json j;
  j["error"] = name;
  j["message"] = message;
  err << j.dump() << "\n";
}

json num_or_null(double v) {
  if (std::isnan(v)) return nullptr;
  return v;
}

const char* decision_name(Decision d) {
  return d == Decision::jumps ? "jumps" : "no_jumps";
}

// Options shared by the subcommands that read a price CSV.
struct InputOpts {
  std::string input;
  std::string transform = "log_diff";
  std::string date_column = "date";
  std::string value_column = "value";
};

void add_input_opts(CLI::App* cmd, InputOpts* o) {
  cmd->add_option("--input", o->input, "Price series CSV file")
      ->required();
  cmd->add_option("--transform", o->transform,
                  "Increment transform: raw_diff or log_diff")
      ->capture_default_str();
  cmd->add_option("--date-column", o->date_column, "Date column name")
      ->capture_default_str();
  cmd->add_option("--value-column", o->value_column, "Value column name")
      ->capture_default_str();
}

PriceSeries load_series(const InputOpts& o) {
  CsvOptions csv;
  csv.date_column = o.date_column;
  csv.value_column = o.value_column;
  return load_price_csv_file(o.input, parse_transform(o.transform), csv);
}

SlopeMode parse_slope(const std::string& name) {
  if (name == "local-average") return SlopeMode::local_average;
  if (name == "single-spacing") return SlopeMode::single_spacing;
  raise(Errc::invalid_argument, "unknown slope mode '" + name +
                                    "' (expected local-average or "
                                    "single-spacing)");
}

void write_to(const std::string& path, std::ostream& fallback,
              const std::function<void(std::ostream&)>& writer) {
  if (path == "-") {
    writer(fallback);
    return;
  }
  std::ofstream f(path);
  if (!f) raise(Errc::data_format, "cannot open output file '" + path + "'");
  writer(f);
}

std::optional<std::uint64_t> seed_from_env() {
  const char* env = std::getenv("SEED");
  if (!env) return std::nullopt;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*env == '\0' || *end != '\0' || env[0] == '-') {
    raise(Errc::invalid_argument,
          "SEED environment variable is not an unsigned integer");
  }
  return static_cast<std::uint64_t>(v);
}

json jump_result_json(const JumpTestResult& r, const PriceSeries& series,
                      SlopeMode slope, std::optional<std::uint64_t> seed) {
  json j;
  j["n"] = r.n;
  j["p_n"] = r.p_n;
  j["crossing_index"] =
      r.boundary_degenerate ? json(nullptr) : json(r.crossing_index);
  j["statistic"] = num_or_null(r.statistic);
  j["p_value"] = num_or_null(r.p_value);
  j["alpha"] = r.alpha;
  j["ci"] = json::array({num_or_null(r.ci_lower), num_or_null(r.ci_upper)});
  j["decision"] = decision_name(r.decision);
  json variance;
  variance["eta"] = num_or_null(r.variance.eta);
  variance["delta"] = num_or_null(r.variance.delta);
  j["variance"] = variance;
  j["transform"] = transform_name(series.transform);
  j["slope"] = slope == SlopeMode::local_average ? "local-average"
                                                 : "single-spacing";
  j["boundary_degenerate"] = r.boundary_degenerate;
  j["ci_clipped"] = r.ci_clipped;
  j["skipped_rows"] = series.skipped_rows;
  if (seed) j["seed"] = *seed;
  return j;
}

json report_json(const ExperimentReport& report, bool include_raw) {
  json j;
  j["plan"] = report.plan_name;
  j["kind"] = study_kind_name(report.kind);
  j["metric"] = report.metric;
  j["alpha"] = report.alpha;
  j["base_seed"] = report.base_seed;
  json cells = json::array();
  for (const CellResult& c : report.cells) {
    json cj;
    cj["label"] = c.label;
    cj["n"] = c.n;
    cj["param"] = num_or_null(c.param);
    cj["replications"] = c.replications;
    cj["valid_cluster"] = c.valid_cluster;
    cj["degenerate_cluster"] = c.degenerate_cluster;
    cj["valid_st"] = c.valid_st;
    cj["degenerate_st"] = c.degenerate_st;
    cj["mean_p_n"] = num_or_null(c.mean_p_n);
    cj["cluster_metric"] = num_or_null(c.cluster_metric);
    cj["cluster_se"] = num_or_null(c.cluster_se);
    cj["st_metric"] = num_or_null(c.st_metric);
    cj["st_se"] = num_or_null(c.st_se);
    cells.push_back(std::move(cj));
  }
  j["cells"] = std::move(cells);
  if (include_raw) {
    json raw = json::array();
    for (const RawRecord& r : report.raw) {
      json rj;
      rj["cell"] = r.cell;
      rj["replication"] = r.replication;
      rj["p_n"] = num_or_null(r.p_n);
      rj["statistic"] = num_or_null(r.statistic);
      rj["cluster_reject"] = r.cluster_reject;
      rj["st_reject"] = r.st_reject;
      raw.push_back(std::move(rj));
    }
    j["raw"] = std::move(raw);
  }
  return j;
}

// ---- subcommand option bundles ----

struct TestOpts {
  InputOpts in;
  double alpha = 0.05;
  std::string slope = "local-average";
  std::string output = "-";
  std::optional<std::uint64_t> seed;
};

struct EcfOpts {
  InputOpts in;
  std::string output = "-";
  double alpha = 0.05;                 // accepted for interface uniformity
  std::optional<std::uint64_t> seed;   // likewise
};

struct SimOpts {
  std::size_t n = 0;
  double mu = 0.0;
  double sigma = 1.0;
  std::uint64_t seed = 0;
  std::string jumps = "none";
  std::optional<double> lambda;
  std::optional<double> height;
  std::optional<double> prob;
  std::string size = "normal";
  double size_mean = 0.0;
  double size_var = 1.0;
  double size_location = 0.0;
  double size_scale = 1.0;
  std::optional<double> size_height;
  std::string start_date = "2000-01-03";
  std::string output = "-";
  double alpha = 0.05;                 // unused; accepted for uniformity
  std::string transform = "log_diff";  // likewise
};

struct McOpts {
  std::string plan_path;
  std::string output = "-";
  std::string raw_path;
  std::string json_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> replications;
  std::optional<int> workers;
  std::optional<double> alpha;
  std::string transform = "log_diff";  // unused; accepted for uniformity
};

struct StOpts {
  InputOpts in;
  double alpha = 0.05;
  double p = 4.0;
  int k = 2;
  std::string output = "-";
  std::optional<std::uint64_t> seed;
};

SizeLaw build_size_law(const SimOpts& o) {
  if (o.size == "normal") {
    if (o.size_var < 0.0) {
      raise(Errc::invalid_argument, "--size-var must be non-negative");
    }
    return NormalSize{o.size_mean, o.size_var};
  }
  if (o.size == "double-exponential") {
    if (o.size_scale <= 0.0) {
      raise(Errc::invalid_argument, "--size-scale must be positive");
    }
    return DoubleExponentialSize{o.size_location, o.size_scale};
  }
  if (o.size == "constant") {
    if (!o.size_height) {
      raise(Errc::invalid_argument, "size constant needs --size-height");
    }
    return ConstantSize{*o.size_height};
  }
  raise(Errc::invalid_argument, "unknown size law '" + o.size + "'");
}

JumpSpec build_jump_spec(const SimOpts& o) {
  if (o.jumps == "none") return NoJumps{};
  if (o.jumps == "constant") {
    if (!o.lambda || !o.height) {
      raise(Errc::invalid_argument,
            "jumps constant needs --lambda and --height");
    }
    if (*o.lambda < 0.0) {
      raise(Errc::invalid_argument, "--lambda must be non-negative");
    }
    return ConstantJumps{*o.height, *o.lambda};
  }
  if (o.jumps == "compound-poisson") {
    if (!o.lambda) {
      raise(Errc::invalid_argument, "jumps compound-poisson needs --lambda");
    }
    if (*o.lambda < 0.0) {
      raise(Errc::invalid_argument, "--lambda must be non-negative");
    }
    return CompoundPoisson{*o.lambda, build_size_law(o)};
  }
  if (o.jumps == "bernoulli") {
    if (!o.prob) {
      raise(Errc::invalid_argument, "jumps bernoulli needs --prob");
    }
    if (!(*o.prob >= 0.0 && *o.prob <= 1.0)) {
      raise(Errc::invalid_argument, "--prob must lie in [0, 1]");
    }
    return BernoulliJumps{*o.prob, build_size_law(o)};
  }
  raise(Errc::invalid_argument, "unknown jump kind '" + o.jumps + "'");
}

int run_test(const TestOpts& o, std::ostream& out) {
  const PriceSeries series = load_series(o.in);
  const SlopeMode slope = parse_slope(o.slope);
  const IncrementSample sample =
      IncrementSample::from_increments(series_increments(series));
  const JumpTestResult r = jump_test(sample, o.alpha, slope);
  const json j = jump_result_json(r, series, slope, o.seed);
  write_to(o.output, out, [&](std::ostream& s) { s << j.dump(2) << "\n"; });
  return 0;
}

int run_ecf(const EcfOpts& o, std::ostream& out) {
  const PriceSeries series = load_series(o.in);
  const IncrementSample sample =
      IncrementSample::from_increments(series_increments(series));
  const EcfCurve curve = compute_ecf(sample);
  write_to(o.output, out, [&](std::ostream& s) { write_ecf_csv(s, curve); });
  return 0;
}

int run_simulate(const SimOpts& o, std::ostream& out) {
  ModelSpec model;
  model.mu = o.mu;
  model.sigma = o.sigma;
  model.n = o.n;
  model.jumps = build_jump_spec(o);
  const PathSample path = simulate_path(model, o.seed);
  write_to(o.output, out, [&](std::ostream& s) {
    write_path_csv(s, path, o.start_date);
  });
  return 0;
}

int run_mc(StudyKind expected, const McOpts& o, std::ostream& out) {
  ExperimentPlan plan = parse_plan_file(o.plan_path);
  if (plan.kind != expected) {
    raise(Errc::data_format,
          std::string("plan kind '") + study_kind_name(plan.kind) +
              "' does not match the '" + study_kind_name(expected) +
              "' subcommand");
  }
  if (o.seed) {
    plan.base_seed = *o.seed;
  } else if (auto env = seed_from_env()) {
    plan.base_seed = *env;
  }
  if (o.alpha) plan.alpha = *o.alpha;
  if (o.replications) plan.replications = *o.replications;
  if (o.workers) plan.workers = *o.workers;
  if (!o.raw_path.empty()) plan.keep_raw = true;

  const ExperimentReport report = run_study(plan);
  write_to(o.output, out,
           [&](std::ostream& s) { write_report_csv(s, report); });
  if (!o.raw_path.empty()) {
    write_to(o.raw_path, out,
             [&](std::ostream& s) { write_raw_csv(s, report); });
  }
  if (!o.json_path.empty()) {
    const json j = report_json(report, plan.keep_raw);
    write_to(o.json_path, out,
             [&](std::ostream& s) { s << j.dump(2) << "\n"; });
  }
  return 0;
}

int run_st(const StOpts& o, std::ostream& out) {
  const PriceSeries series = load_series(o.in);
  std::vector<double> observations;
  if (series.transform == Transform::raw_diff) {
    observations = series.values;
  } else {
    // Rebuild a path whose increments are the transformed ones.
    const std::vector<double> w = series_increments(series);
    observations.resize(w.size() + 1);
    observations[0] = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      observations[i + 1] = observations[i] + w[i];
    }
  }
  const StTestResult r = st_test(observations, o.p, o.k, o.alpha);
  json j;
  j["n"] = observations.size() - 1;
  j["ratio"] = num_or_null(r.ratio);
  j["standardized"] = num_or_null(r.standardized);
  j["p_value"] = num_or_null(r.p_value);
  j["variance"] = num_or_null(r.variance);
  j["null_value"] = r.null_value;
  j["alpha"] = r.alpha;
  j["p"] = r.p;
  j["k"] = r.k;
  j["decision"] = decision_name(r.decision);
  j["transform"] = transform_name(series.transform);
  if (o.seed) j["seed"] = *o.seed;
  write_to(o.output, out, [&](std::ostream& s) { s << j.dump(2) << "\n"; });
  return 0;
}

void add_seed_opt(CLI::App* cmd, std::optional<std::uint64_t>* seed) {
  cmd->add_option("--seed", *seed, "Seed echoed into the output");
}

}  // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out,
             std::ostream& err) {
  CLI::App app{
      "Jump detection for discretely observed price paths via the "
      "cross-over of ordered increments"};
  app.require_subcommand(1);

  TestOpts test_o;
  CLI::App* test_cmd = app.add_subcommand(
      "test", "Split-point jump test on a price series");
  add_input_opts(test_cmd, &test_o.in);
  test_cmd->add_option("--alpha", test_o.alpha, "Test level")
      ->capture_default_str();
  test_cmd->add_option("--slope", test_o.slope,
                       "Quantile slope estimator: local-average or "
                       "single-spacing")
      ->capture_default_str();
  test_cmd->add_option("--output", test_o.output, "Output path (- = stdout)")
      ->capture_default_str();
  add_seed_opt(test_cmd, &test_o.seed);

  EcfOpts ecf_o;
  CLI::App* ecf_cmd = app.add_subcommand(
      "ecf", "Write the empirical cross-over curve as CSV");
  add_input_opts(ecf_cmd, &ecf_o.in);
  ecf_cmd->add_option("--output", ecf_o.output, "Output path (- = stdout)")
      ->capture_default_str();
  ecf_cmd->add_option("--alpha", ecf_o.alpha, "Accepted, not used here");
  add_seed_opt(ecf_cmd, &ecf_o.seed);

  SimOpts sim_o;
  CLI::App* sim_cmd = app.add_subcommand(
      "simulate", "Simulate a drift+diffusion(+jumps) path as CSV");
  sim_cmd->add_option("--n", sim_o.n, "Number of increments")->required();
  sim_cmd->add_option("--mu", sim_o.mu, "Drift")->capture_default_str();
  sim_cmd->add_option("--sigma", sim_o.sigma, "Volatility")
      ->capture_default_str();
  sim_cmd->add_option("--seed", sim_o.seed, "Simulation seed")
      ->capture_default_str();
  sim_cmd->add_option("--jumps", sim_o.jumps,
                      "Jump kind: none, constant, compound-poisson, bernoulli")
      ->capture_default_str();
  sim_cmd->add_option("--lambda", sim_o.lambda, "Jump intensity per unit time");
  sim_cmd->add_option("--height", sim_o.height, "Constant jump height");
  sim_cmd->add_option("--prob", sim_o.prob, "Per-step jump probability");
  sim_cmd->add_option("--size", sim_o.size,
                      "Jump size law: normal, double-exponential, constant")
      ->capture_default_str();
  sim_cmd->add_option("--size-mean", sim_o.size_mean, "Normal size mean")
      ->capture_default_str();
  sim_cmd->add_option("--size-var", sim_o.size_var, "Normal size variance")
      ->capture_default_str();
  sim_cmd->add_option("--size-location", sim_o.size_location,
                      "Double-exponential location")
      ->capture_default_str();
  sim_cmd->add_option("--size-scale", sim_o.size_scale,
                      "Double-exponential scale")
      ->capture_default_str();
  sim_cmd->add_option("--size-height", sim_o.size_height,
                      "Constant size height");
  sim_cmd->add_option("--start-date", sim_o.start_date,
                      "Date of the first observation")
      ->capture_default_str();
  sim_cmd->add_option("--output", sim_o.output, "Output path (- = stdout)")
      ->capture_default_str();
  sim_cmd->add_option("--alpha", sim_o.alpha, "Accepted, not used here");
  sim_cmd->add_option("--transform", sim_o.transform,
                      "Accepted, not used here");

  McOpts level_o, power_o, curve_o;
  const auto add_mc_opts = [](CLI::App* cmd, McOpts* o) {
    cmd->add_option("--plan", o->plan_path, "Experiment plan file")
        ->required();
    cmd->add_option("--output", o->output, "Report CSV path (- = stdout)")
        ->capture_default_str();
    cmd->add_option("--raw", o->raw_path,
                    "Also write per-replication records to this CSV");
    cmd->add_option("--json", o->json_path, "Also write the report as JSON");
    cmd->add_option("--seed", o->seed, "Override the plan's base seed");
    cmd->add_option("--replications", o->replications,
                    "Override the plan's replication count");
    cmd->add_option("--workers", o->workers,
                    "Worker threads (0 = hardware concurrency)");
    cmd->add_option("--alpha", o->alpha, "Override the plan's test level");
    cmd->add_option("--transform", o->transform, "Accepted, not used here");
  };
  CLI::App* level_cmd = app.add_subcommand(
      "mc-level", "Monte Carlo level study from a plan file");
  add_mc_opts(level_cmd, &level_o);
  CLI::App* power_cmd = app.add_subcommand(
      "mc-power", "Monte Carlo power (failure proportion) study");
  add_mc_opts(power_cmd, &power_o);
  CLI::App* curve_cmd = app.add_subcommand(
      "power-curve", "Power curve over a swept jump-size parameter");
  add_mc_opts(curve_cmd, &curve_o);

  StOpts st_o;
  CLI::App* st_cmd = app.add_subcommand(
      "st-test", "Power-variation ratio test (comparison baseline)");
  add_input_opts(st_cmd, &st_o.in);
  st_cmd->add_option("--alpha", st_o.alpha, "Test level")
      ->capture_default_str();
  st_cmd->add_option("--p", st_o.p, "Power (only 4 is supported)")
      ->capture_default_str();
  st_cmd->add_option("--k", st_o.k, "Coarse sampling stride")
      ->capture_default_str();
  st_cmd->add_option("--output", st_o.output, "Output path (- = stdout)")
      ->capture_default_str();
  add_seed_opt(st_cmd, &st_o.seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    emit_error(err, "usage", e.what());
    return 1;
  }

  try {
    if (test_cmd->parsed()) return run_test(test_o, out);
    if (ecf_cmd->parsed()) return run_ecf(ecf_o, out);
    if (sim_cmd->parsed()) return run_simulate(sim_o, out);
    if (level_cmd->parsed()) return run_mc(StudyKind::level, level_o, out);
    if (power_cmd->parsed()) return run_mc(StudyKind::power, power_o, out);
    if (curve_cmd->parsed()) {
      return run_mc(StudyKind::power_curve, curve_o, out);
    }
    if (st_cmd->parsed()) return run_st(st_o, out);
    emit_error(err, "usage", "no subcommand given");
    return 1;
  } catch (const Error& e) {
    emit_error(err, errc_name(e.code()), e.what());
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    emit_error(err, "internal", e.what());
    return 3;
  }
}

}  // namespace ecf::cli
