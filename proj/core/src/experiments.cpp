#include "ecfjump/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>
#include <thread>
#include <variant>

#include "ecfjump/ecf.hpp"
#include "ecfjump/errors.hpp"
#include "ecfjump/increments.hpp"
#include "ecfjump/io.hpp"
#include "ecfjump/math.hpp"
#include "ecfjump/rng.hpp"
#include "ecfjump/st_test.hpp"

namespace ecf {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct RepOutcome {
  double p_n = kNaN;
  double statistic = kNaN;
  int cluster_reject = -1;
  int st_reject = -1;
};

void run_one(const ExperimentPlan& plan, std::size_t cell_index, int rep,
             RepOutcome* out) {
  const ExperimentCell& cell = plan.cells[cell_index];
  const std::uint64_t seed =
      derive_seed(plan.base_seed, static_cast<std::uint64_t>(cell_index),
                  static_cast<std::uint64_t>(rep));
  const PathSample path = simulate_path(cell.model, seed);

  if (plan.run_cluster) {
    try {
      const IncrementSample sample = make_increments(path.values);
      const JumpTestResult r = jump_test(sample, plan.alpha, plan.slope_mode);
      out->p_n = r.p_n;
      out->statistic = r.statistic;
      out->cluster_reject = (r.decision == Decision::jumps) ? 1 : 0;
    } catch (const Error&) {
      // Degenerate replication: keep p_n when the split itself exists.
      try {
        const IncrementSample sample = make_increments(path.values);
        out->p_n = split_point(compute_ecf(sample)).p_n;
      } catch (const Error&) {
      }
    }
  }
  if (plan.run_st) {
    try {
      const StTestResult r = st_test(path.values, 4.0, 2, plan.alpha);
      out->st_reject = (r.decision == Decision::jumps) ? 1 : 0;
    } catch (const Error&) {
    }
  }
}

void validate_plan(const ExperimentPlan& plan) {
  if (plan.cells.empty()) {
    raise(Errc::invalid_argument, "experiment plan has no cells");
  }
  if (plan.replications < 1) {
    raise(Errc::invalid_argument, "replications must be at least 1");
  }
  if (!(plan.alpha > 0.0 && plan.alpha < 1.0)) {
    raise(Errc::invalid_argument, "alpha must lie strictly between 0 and 1");
  }
  if (!plan.run_cluster && !plan.run_st) {
    raise(Errc::invalid_argument, "plan enables no tests");
  }
  if (plan.workers < 0) {
    raise(Errc::invalid_argument, "workers must be non-negative");
  }
}

ExperimentReport run_cells(const ExperimentPlan& plan, bool report_failure) {
  validate_plan(plan);
  const auto t0 = std::chrono::steady_clock::now();

  ExperimentReport report;
  report.plan_name = plan.name;
  report.kind = plan.kind;
  report.metric = report_failure ? "failure" : "rejection";
  report.alpha = plan.alpha;
  report.base_seed = plan.base_seed;

  unsigned workers = plan.workers == 0 ? std::thread::hardware_concurrency()
                                       : static_cast<unsigned>(plan.workers);
  if (workers == 0) workers = 1;
  const int reps = plan.replications;

  std::vector<RepOutcome> slots(static_cast<std::size_t>(reps));
  for (std::size_t c = 0; c < plan.cells.size(); ++c) {
    slots.assign(slots.size(), RepOutcome{});
    // Disjoint contiguous slot ranges per worker; the reduce below is
    // sequential, so the report does not depend on the worker count.
    if (workers <= 1 || reps == 1) {
      for (int r = 0; r < reps; ++r) run_one(plan, c, r, &slots[r]);
    } else {
      std::vector<std::thread> pool;
      const int per = (reps + static_cast<int>(workers) - 1) /
                      static_cast<int>(workers);
      for (unsigned w = 0; w < workers; ++w) {
        const int lo = static_cast<int>(w) * per;
        const int hi = std::min(reps, lo + per);
        if (lo >= hi) break;
        pool.emplace_back([&plan, c, lo, hi, &slots] {
          for (int r = lo; r < hi; ++r) run_one(plan, c, r, &slots[r]);
        });
      }
      for (std::thread& t : pool) t.join();
    }

    CellResult cell;
    cell.label = plan.cells[c].label;
    cell.n = plan.cells[c].model.n;
    cell.param = plan.cells[c].param;
    cell.replications = reps;
    long cluster_rejections = 0;
    long st_rejections = 0;
    long p_count = 0;
    CompensatedSum p_sum;
    for (int r = 0; r < reps; ++r) {
      const RepOutcome& o = slots[static_cast<std::size_t>(r)];
      if (std::isfinite(o.p_n)) {
        p_sum.add(o.p_n);
        ++p_count;
      }
      if (plan.run_cluster) {
        if (o.cluster_reject >= 0) {
          ++cell.valid_cluster;
          cluster_rejections += o.cluster_reject;
        } else {
          ++cell.degenerate_cluster;
        }
      }
      if (plan.run_st) {
        if (o.st_reject >= 0) {
          ++cell.valid_st;
          st_rejections += o.st_reject;
        } else {
          ++cell.degenerate_st;
        }
      }
      if (plan.keep_raw) {
        RawRecord raw;
        raw.cell = static_cast<int>(c);
        raw.replication = r;
        raw.p_n = o.p_n;
        raw.statistic = o.statistic;
        raw.cluster_reject = o.cluster_reject;
        raw.st_reject = o.st_reject;
        report.raw.push_back(raw);
      }
    }
    if (p_count > 0) {
      cell.mean_p_n = p_sum.value() / static_cast<double>(p_count);
    }
    const auto proportion = [report_failure](long rejections, int valid,
                                             double* metric, double* se) {
      if (valid <= 0) return;
      double m = static_cast<double>(rejections) / valid;
      if (report_failure) m = 1.0 - m;
      *metric = m;
      *se = std::sqrt(m * (1.0 - m) / valid);
    };
    if (plan.run_cluster) {
      proportion(cluster_rejections, cell.valid_cluster, &cell.cluster_metric,
                 &cell.cluster_se);
    }
    if (plan.run_st) {
      proportion(st_rejections, cell.valid_st, &cell.st_metric, &cell.st_se);
    }
    report.cells.push_back(std::move(cell));
  }

  report.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return report;
}

bool cell_has_jumps(const ModelSpec& model) {
  return !std::holds_alternative<NoJumps>(model.jumps);
}

}  // namespace

const char* study_kind_name(StudyKind kind) {
  switch (kind) {
    case StudyKind::level: return "level";
    case StudyKind::power: return "power";
    case StudyKind::power_curve: return "power-curve";
  }
  return "unknown";
}

ExperimentReport run_level_study(const ExperimentPlan& plan) {
  for (const ExperimentCell& cell : plan.cells) {
    if (cell_has_jumps(cell.model)) {
      raise(Errc::invalid_argument,
            "level study requires jump-free cells; got '" + cell.label + "'");
    }
  }
  return run_cells(plan, /*report_failure=*/false);
}

ExperimentReport run_power_study(const ExperimentPlan& plan) {
  return run_cells(plan, /*report_failure=*/true);
}

ExperimentReport run_power_curve(const ExperimentPlan& plan) {
  return run_cells(plan, /*report_failure=*/false);
}

ExperimentReport run_study(const ExperimentPlan& plan) {
  switch (plan.kind) {
    case StudyKind::level: return run_level_study(plan);
    case StudyKind::power: return run_power_study(plan);
    case StudyKind::power_curve: return run_power_curve(plan);
  }
  raise(Errc::invalid_argument, "unknown study kind");
}

void write_report_csv(std::ostream& out, const ExperimentReport& report) {
  out << "label,n,param,replications,valid_cluster,degenerate_cluster,"
         "valid_st,degenerate_st,mean_p_n,cluster_" << report.metric
      << ",cluster_se,st_" << report.metric << ",st_se\n";
  for (const CellResult& c : report.cells) {
    out << c.label << ',' << c.n << ',' << format_g17(c.param) << ','
        << c.replications << ',' << c.valid_cluster << ','
        << c.degenerate_cluster << ',' << c.valid_st << ',' << c.degenerate_st
        << ',' << format_g17(c.mean_p_n) << ',' << format_g17(c.cluster_metric)
        << ',' << format_g17(c.cluster_se) << ',' << format_g17(c.st_metric)
        << ',' << format_g17(c.st_se) << '\n';
  }
}

void write_raw_csv(std::ostream& out, const ExperimentReport& report) {
  out << "cell,replication,p_n,statistic,cluster_reject,st_reject\n";
  for (const RawRecord& r : report.raw) {
    out << r.cell << ',' << r.replication << ',' << format_g17(r.p_n) << ','
        << format_g17(r.statistic) << ',' << r.cluster_reject << ','
        << r.st_reject << '\n';
  }
}

}  // namespace ecf
