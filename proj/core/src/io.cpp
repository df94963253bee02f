#include "ecfjump/io.hpp"

#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "ecfjump/errors.hpp"

namespace ecf {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      cells.push_back(trim(cur));
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  cells.push_back(trim(cur));
  return cells;
}

bool is_missing_marker(const std::string& cell) {
  return cell.empty() || cell == "." || cell == "NA" || cell == "ND" ||
         cell == "NaN" || cell == "nan";
}

bool parse_double(const std::string& cell, double* out) {
  if (cell.empty()) return false;
  char* end = nullptr;
  const double v = std::strtod(cell.c_str(), &end);
  if (end != cell.c_str() + cell.size()) return false;
  *out = v;
  return true;
}

// YYYY-MM-DD, digits only, calendar-valid.
bool parse_iso_date(const std::string& cell, long* serial) {
  if (cell.size() != 10 || cell[4] != '-' || cell[7] != '-') return false;
  for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u}) {
    if (!std::isdigit(static_cast<unsigned char>(cell[i]))) return false;
  }
  const int y = std::stoi(cell.substr(0, 4));
  const unsigned m = static_cast<unsigned>(std::stoi(cell.substr(5, 2)));
  const unsigned d = static_cast<unsigned>(std::stoi(cell.substr(8, 2)));
  const std::chrono::year_month_day ymd{std::chrono::year{y},
                                        std::chrono::month{m},
                                        std::chrono::day{d}};
  if (!ymd.ok()) return false;
  *serial = std::chrono::sys_days{ymd}.time_since_epoch().count();
  return true;
}

}  // namespace

Transform parse_transform(const std::string& name) {
  if (name == "raw_diff" || name == "raw-diff") return Transform::raw_diff;
  if (name == "log_diff" || name == "log-diff") return Transform::log_diff;
  raise(Errc::invalid_argument,
        "unknown transform '" + name + "' (expected raw_diff or log_diff)");
}

const char* transform_name(Transform t) {
  return t == Transform::raw_diff ? "raw_diff" : "log_diff";
}

long parse_date(const std::string& text) {
  long serial = 0;
  if (!parse_iso_date(text, &serial)) {
    raise(Errc::data_format, "invalid calendar date '" + text + "'");
  }
  return serial;
}

std::string format_date(long serial_day) {
  const std::chrono::year_month_day ymd{
      std::chrono::sys_days{std::chrono::days{serial_day}}};
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", int(ymd.year()),
                unsigned(ymd.month()), unsigned(ymd.day()));
  return buf;
}

PriceSeries load_price_csv(std::istream& in, Transform transform,
                           const CsvOptions& options) {
  std::string line;
  if (!std::getline(in, line)) {
    raise(Errc::data_format, "empty input: missing header row");
  }
  // Strip a UTF-8 byte order mark if present.
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) {
    line.erase(0, 3);
  }
  const std::vector<std::string> header = split_csv_line(line);
  std::size_t date_col = header.size();
  std::size_t value_col = header.size();
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == options.date_column) date_col = i;
    if (header[i] == options.value_column) value_col = i;
  }
  if (date_col == header.size()) {
    raise(Errc::data_format,
          "header has no '" + options.date_column + "' column");
  }
  if (value_col == header.size()) {
    raise(Errc::data_format,
          "header has no '" + options.value_column + "' column");
  }

  PriceSeries series;
  series.transform = transform;
  std::size_t data_rows = 0;
  long prev_serial = 0;
  bool have_prev = false;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    ++data_rows;
    const std::vector<std::string> cells = split_csv_line(line);
    if (cells.size() != header.size()) {
      ++series.skipped_rows;
      continue;
    }
    const std::string& value_cell = cells[value_col];
    if (is_missing_marker(value_cell)) {
      ++series.skipped_rows;
      continue;
    }
    long serial = 0;
    double value = 0.0;
    if (!parse_iso_date(cells[date_col], &serial) ||
        !parse_double(value_cell, &value) || !std::isfinite(value)) {
      ++series.skipped_rows;
      continue;
    }
    if (have_prev && serial <= prev_serial) {
      raise(Errc::data_format, "dates are not strictly increasing at line " +
                                   std::to_string(line_no));
    }
    if (transform == Transform::log_diff && value <= 0.0) {
      raise(Errc::non_positive_price,
            "log_diff needs positive values; got " + value_cell + " at line " +
                std::to_string(line_no));
    }
    prev_serial = serial;
    have_prev = true;
    series.dates.push_back(cells[date_col]);
    series.values.push_back(value);
  }

  if (data_rows == 0) raise(Errc::data_format, "no data rows after header");
  const double skip_fraction =
      static_cast<double>(series.skipped_rows) / static_cast<double>(data_rows);
  if (skip_fraction > options.max_skip_fraction) {
    raise(Errc::data_format,
          "too many unusable rows: " + std::to_string(series.skipped_rows) +
              " of " + std::to_string(data_rows));
  }
  if (series.values.size() < 3) {
    raise(Errc::too_few_observations,
          "need at least 3 usable observations, got " +
              std::to_string(series.values.size()));
  }
  return series;
}

PriceSeries load_price_csv_file(const std::string& path, Transform transform,
                                const CsvOptions& options) {
  std::ifstream in(path);
  if (!in) raise(Errc::data_format, "cannot open file '" + path + "'");
  return load_price_csv(in, transform, options);
}

std::vector<double> series_increments(const PriceSeries& series) {
  const std::vector<double>& v = series.values;
  if (v.size() < 3) {
    raise(Errc::too_few_observations, "series too short for increments");
  }
  std::vector<double> w(v.size() - 1);
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    if (series.transform == Transform::log_diff) {
      if (!(v[i] > 0.0 && v[i + 1] > 0.0)) {
        raise(Errc::non_positive_price, "log_diff needs positive values");
      }
      w[i] = std::log(v[i + 1]) - std::log(v[i]);
    } else {
      w[i] = v[i + 1] - v[i];
    }
  }
  return w;
}

std::string format_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_ecf_csv(std::ostream& out, const EcfCurve& curve) {
  out << "p,g_n\n";
  const double n = static_cast<double>(curve.n);
  for (std::size_t k = 1; k <= curve.grid.size(); ++k) {
    out << format_g17(static_cast<double>(k) / n) << ','
        << format_g17(curve.grid[k - 1]) << '\n';
  }
  out << "terminal," << format_g17(curve.terminal) << '\n';
}

void write_path_csv(std::ostream& out, const PathSample& path,
                    const std::string& start_date) {
  const long start = parse_date(start_date);
  out << "date,value,jump\n";
  std::size_t next_jump = 0;
  for (std::size_t i = 0; i < path.values.size(); ++i) {
    int jump = 0;
    if (next_jump < path.jump_steps.size() &&
        path.jump_steps[next_jump] == i) {
      jump = 1;
      ++next_jump;
    }
    out << format_date(start + static_cast<long>(i)) << ','
        << format_g17(path.values[i]) << ',' << jump << '\n';
  }
}

}  // namespace ecf
