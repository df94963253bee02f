#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ecfjump/ecf.hpp"
#include "ecfjump/sim.hpp"

namespace ecf {

// How a price series is turned into the increment stream under test.
enum class Transform { raw_diff, log_diff };

Transform parse_transform(const std::string& name);
const char* transform_name(Transform t);

struct PriceSeries {
  std::vector<std::string> dates;  // ISO calendar dates, strictly increasing
  std::vector<double> values;
  Transform transform = Transform::log_diff;
  std::size_t skipped_rows = 0;  // missing/unparseable rows dropped on load
};

struct CsvOptions {
  std::string date_column = "date";
  std::string value_column = "value";
  // Loading fails when more than this fraction of data rows is unusable.
  double max_skip_fraction = 0.05;
};

// Reads a comma separated file with a header row. Rows whose value cell is
// empty (or a missing-data marker like "." or "NA") are skipped and counted;
// so are rows that fail to parse. Dates must be YYYY-MM-DD and strictly
// increasing.
PriceSeries load_price_csv(std::istream& in, Transform transform,
                           const CsvOptions& options = {});
PriceSeries load_price_csv_file(const std::string& path, Transform transform,
                                const CsvOptions& options = {});

// Increments of the series under its transform. log_diff requires strictly
// positive values.
std::vector<double> series_increments(const PriceSeries& series);

// Shortest decimal text that round-trips an IEEE double (printf %.17g).
std::string format_g17(double x);

// Cross-over curve as plot-ready CSV: header "p,g_n", one row per interior
// grid point, then the terminal value flagged with p = "terminal".
void write_ecf_csv(std::ostream& out, const EcfCurve& curve);

// Simulated path as "date,value,jump" rows with synthetic consecutive
// calendar dates. `jump` marks steps that contain at least one jump; the
// first row (the starting value) always carries 0. Loading the file back
// with the raw_diff transform reproduces the in-memory increments exactly.
void write_path_csv(std::ostream& out, const PathSample& path,
                    const std::string& start_date = "2000-01-03");

// Parses "YYYY-MM-DD" into a day serial number (days since 1970-01-01);
// inverse of format_date. Used for synthetic date generation.
long parse_date(const std::string& text);
std::string format_date(long serial_day);

}  // namespace ecf
