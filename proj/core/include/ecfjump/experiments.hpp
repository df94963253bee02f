#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "ecfjump/jump_test.hpp"
#include "ecfjump/sim.hpp"

namespace ecf {

enum class StudyKind { level, power, power_curve };

const char* study_kind_name(StudyKind kind);

struct ExperimentCell {
  std::string label;
  ModelSpec model;
  // Swept parameter value for power curves, NaN otherwise.
  double param = std::numeric_limits<double>::quiet_NaN();
};

struct ExperimentPlan {
  std::string name;
  StudyKind kind = StudyKind::level;
  std::vector<ExperimentCell> cells;
  int replications = 1;
  double alpha = 0.05;
  std::uint64_t base_seed = 0;
  bool run_cluster = true;
  bool run_st = false;
  bool keep_raw = false;
  SlopeMode slope_mode = SlopeMode::local_average;
  std::string param_name;  // "tau" or "eta" for power curves, else empty
  // Worker threads for the replication loop; 0 means hardware concurrency.
  // Results are bitwise identical for every worker count.
  int workers = 1;
};

// One replication's outcome; kept when the plan asks for raw records.
struct RawRecord {
  int cell = 0;
  int replication = 0;
  double p_n = std::numeric_limits<double>::quiet_NaN();
  double statistic = std::numeric_limits<double>::quiet_NaN();
  int cluster_reject = -1;  // -1 when the test failed or was disabled
  int st_reject = -1;
};

struct CellResult {
  std::string label;
  std::size_t n = 0;
  double param = std::numeric_limits<double>::quiet_NaN();
  int replications = 0;
  // Replications whose test completed; degenerate ones are excluded from the
  // proportions but counted here.
  int valid_cluster = 0;
  int degenerate_cluster = 0;
  int valid_st = 0;
  int degenerate_st = 0;
  double mean_p_n = std::numeric_limits<double>::quiet_NaN();
  // Rejection proportion for level studies and power curves; proportion of
  // replications that fail to detect the jumps for power studies. The report
  // header names which one it is.
  double cluster_metric = std::numeric_limits<double>::quiet_NaN();
  double cluster_se = std::numeric_limits<double>::quiet_NaN();
  double st_metric = std::numeric_limits<double>::quiet_NaN();
  double st_se = std::numeric_limits<double>::quiet_NaN();
};

struct ExperimentReport {
  std::string plan_name;
  StudyKind kind = StudyKind::level;
  std::string metric;  // "rejection" or "failure"
  double alpha = 0.05;
  std::uint64_t base_seed = 0;
  std::vector<CellResult> cells;
  std::vector<RawRecord> raw;
  // Wall clock; informational only and excluded from serialized reports so
  // identical runs stay byte identical.
  double runtime_seconds = 0.0;
};

// Monte Carlo studies over the plan's cells. Per-replication seeds are
// derived from (base_seed, cell index, replication index), so any execution
// order and any worker count produce the same report.
ExperimentReport run_level_study(const ExperimentPlan& plan);
ExperimentReport run_power_study(const ExperimentPlan& plan);
ExperimentReport run_power_curve(const ExperimentPlan& plan);
ExperimentReport run_study(const ExperimentPlan& plan);

// One row per cell; the metric columns are named after report.metric.
void write_report_csv(std::ostream& out, const ExperimentReport& report);
// Per-replication records (requires keep_raw in the plan).
void write_raw_csv(std::ostream& out, const ExperimentReport& report);

}  // namespace ecf
