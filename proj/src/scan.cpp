#include "hankel/scan.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "hankel/conditions.hpp"
#include "hankel/errors.hpp"

namespace hankel {
namespace {

double parse_double(std::string_view s, const char* what) {
  std::string buf(s);
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(buf, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != buf.size()) {
    throw std::invalid_argument(std::string(what) + ": not a number: \"" + buf + "\"");
  }
  return x;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

constexpr const char* kHeader = "v2,v6,v1,v3,v5,n0,m0,gap,pns_free,status";

void write_row(std::ostream& out, const ScanRow& r) {
  for (double x : r.point.as_array()) out << format_number(x) << ',';
  out << format_number(r.n0) << ',' << format_number(r.m0) << ',' << format_number(r.gap) << ',';
  if (r.pns_free) out << (*r.pns_free ? "true" : "false");
  out << ',' << to_string(r.status);
}

}  // namespace

std::size_t coordinate_index(std::string_view name) {
  for (std::size_t i = 0; i < kCoordinateNames.size(); ++i) {
    if (kCoordinateNames[i] == name) return i;
  }
  throw std::invalid_argument("unknown coordinate \"" + std::string(name) +
                              "\" (expected v2, v6, v1, v3 or v5)");
}

std::vector<double> Axis::values() const {
  if (steps <= 1) return {min};
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    out.push_back(i == steps - 1 ? max : min + (max - min) * i / (steps - 1));
  }
  return out;
}

Axis parse_axis(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw std::invalid_argument("axis must be <min>:<max>:<steps>");
  Axis a;
  a.min = parse_double(parts[0], "axis min");
  a.max = parse_double(parts[1], "axis max");
  const double steps = parse_double(parts[2], "axis steps");
  if (steps != std::floor(steps) || steps < 1 || steps > 1e6) {
    throw std::invalid_argument("axis steps must be a positive integer");
  }
  a.steps = static_cast<int>(steps);
  return a;
}

void GridSpec::validate() const {
  for (std::size_t i = 0; i < axes.size(); ++i) {
    const Axis& a = axes[i];
    const std::string name(kCoordinateNames[i]);
    if (!std::isfinite(a.min) || !std::isfinite(a.max)) throw std::invalid_argument(name + ": non-finite bound");
    if (a.steps < 1) throw std::invalid_argument(name + ": steps must be >= 1");
    if (a.min > a.max) throw std::invalid_argument(name + ": min > max");
  }
  if (jobs < 0) throw std::invalid_argument("jobs must be >= 0");
  search.validate();
  sos.validate();
}

std::vector<SlicePoint> GridSpec::points() const {
  std::array<std::vector<double>, 5> vals;
  for (std::size_t i = 0; i < 5; ++i) vals[i] = axes[i].values();
  std::vector<SlicePoint> out;
  for (double v2 : vals[0]) {
    for (double v6 : vals[1]) {
      for (double v1 : vals[2]) {
        for (double v3 : vals[3]) {
          for (double v5 : vals[4]) out.push_back({v2, v6, v1, v3, v5});
        }
      }
    }
  }
  return out;
}

std::string_view to_string(RowStatus s) {
  switch (s) {
    case RowStatus::Ok: return "ok";
    case RowStatus::SkippedDomain: return "skipped_domain";
    case RowStatus::Error: return "error";
  }
  return "error";
}

double gap_tolerance(double n0) { return std::max(1e-3, 1e-2 * n0); }

ScanRow scan_point(const SlicePoint& p, const SearchOptions& search, const M0Options& sos) {
  ScanRow row;
  row.point = p;
  if (!in_effective_domain(p)) {
    row.status = RowStatus::SkippedDomain;
    return row;
  }
  try {
    const BoundResult psd = n0(p, search);
    row.n0 = psd.value;
    M0Options opts = sos;
    opts.search = search;
    row.m0 = m0(p, opts, psd).value;
    row.gap = row.m0 - row.n0;
    row.pns_free = row.gap <= gap_tolerance(row.n0);
    row.status = RowStatus::Ok;
  } catch (const NonConvergence&) {
    row.status = RowStatus::Error;
  }
  return row;
}

std::vector<ScanRow> run_points(const std::vector<SlicePoint>& points, const SearchOptions& search,
                                const M0Options& sos, int jobs) {
  std::vector<ScanRow> rows(points.size());
  unsigned workers = jobs > 0 ? static_cast<unsigned>(jobs) : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(1, points.size())));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) rows[i] = scan_point(points[i], search, sos);
  };
  if (workers <= 1) {
    work();
    return rows;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  pool.clear();  // joins
  return rows;
}

std::vector<ScanRow> run_scan(const GridSpec& spec) {
  spec.validate();
  return run_points(spec.points(), spec.search, spec.sos, spec.jobs);
}

ScanSummary summarize(const std::vector<ScanRow>& rows) {
  ScanSummary s;
  for (const auto& r : rows) {
    switch (r.status) {
      case RowStatus::Ok:
        ++s.ok;
        s.max_gap = std::max(s.max_gap, r.gap);
        s.all_pns_free = s.all_pns_free && r.pns_free.value_or(false);
        break;
      case RowStatus::SkippedDomain: ++s.skipped; break;
      case RowStatus::Error: ++s.errors; break;
    }
  }
  return s;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

void write_csv(std::ostream& out, const std::vector<ScanRow>& rows) {
  out << kHeader << '\n';
  for (const auto& r : rows) {
    write_row(out, r);
    out << '\n';
  }
}

std::vector<ScanRow> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kHeader) throw std::invalid_argument("CSV header mismatch");
  std::vector<ScanRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 10) throw std::invalid_argument("CSV row needs 10 fields: " + line);
    ScanRow r;
    std::array<double, 5> p{};
    for (std::size_t i = 0; i < 5; ++i) p[i] = parse_double(f[i], "coordinate");
    r.point = SlicePoint::from_array(p);
    auto optional_number = [](std::string_view s) {
      return s.empty() ? std::numeric_limits<double>::quiet_NaN() : parse_double(s, "value");
    };
    r.n0 = optional_number(f[5]);
    r.m0 = optional_number(f[6]);
    r.gap = optional_number(f[7]);
    if (f[8] == "true") {
      r.pns_free = true;
    } else if (f[8] == "false") {
      r.pns_free = false;
    } else if (!f[8].empty()) {
      throw std::invalid_argument("bad pns_free field: " + std::string(f[8]));
    }
    if (f[9] == "ok") {
      r.status = RowStatus::Ok;
    } else if (f[9] == "skipped_domain") {
      r.status = RowStatus::SkippedDomain;
    } else if (f[9] == "error") {
      r.status = RowStatus::Error;
    } else {
      throw std::invalid_argument("bad status field: " + std::string(f[9]));
    }
    rows.push_back(r);
  }
  return rows;
}

const std::array<Table1Entry, 88>& table1_reference() {
  static const std::array<Table1Entry, 88> table = [] {
    constexpr std::array<double, 11> v2s = {-4.0, -2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 1.5, 2.0, 3.0, 4.0};
    constexpr std::array<double, 8> v6s = {-0.2, -0.1, 0.0, 0.5, 1.0, 1.5, 2.0, 4.0};
    constexpr double ref[11][8] = {
        {3.54e4, 8.74e3, 3.76e3, 4.78e2, 3.12e2, 3.92e2, 6.23e2, 6.37e3},
        {2.98e4, 6.77e3, 2.73e3, 2.75e2, 1.25e2, 1.70e2, 3.57e2, 6.11e3},
        {2.72e4, 5.85e3, 2.26e3, 1.91e2, 6.15e1, 9.26e1, 2.73e2, 6.06e3},
        {2.59e4, 5.42e3, 2.04e3, 1.53e2, 3.78e1, 6.41e1, 2.48e2, 6.06e3},
        {2.46e4, 4.99e3, 1.82e3, 1.20e2, 1.96e1, 4.50e1, 2.39e2, 6.07e3},
        {2.34e4, 4.57e3, 1.62e3, 8.90e1, 7.058, 4.18e1, 2.45e2, 6.09e3},
        {2.21e4, 4.17e3, 1.42e3, 6.21e1, 1.000, 4.93e1, 2.56e2, 6.11e3},
        {2.09e4, 3.78e3, 1.23e3, 3.90e1, 4.191, 5.69e1, 2.67e2, 6.14e3},
        {1.98e4, 3.41e3, 1.06e3, 2.02e1, 8.00e0, 6.46e1, 2.78e2, 6.16e3},
        {1.75e4, 2.70e3, 7.28e2, 7.16e0, 1.66e1, 8.01e1, 3.01e2, 6.21e3},
        {1.53e4, 2.04e3, 4.41e2, 1.23e1, 2.60e1, 9.60e1, 3.23e2, 6.25e3},
    };
    std::array<Table1Entry, 88> out{};
    for (std::size_t i = 0; i < 11; ++i) {
      for (std::size_t j = 0; j < 8; ++j) out[i * 8 + j] = {v2s[i], v6s[j], ref[i][j]};
    }
    return out;
  }();
  return table;
}

std::vector<SlicePoint> table1_points() {
  std::vector<SlicePoint> out;
  for (const auto& e : table1_reference()) out.push_back({e.v2, e.v6, 0.0, 0.0, 0.0});
  return out;
}

double relative_deviation(double value, double reference) {
  return std::abs(value - reference) / std::abs(reference);
}

void write_table1_csv(std::ostream& out, const std::vector<ScanRow>& rows) {
  const auto& ref = table1_reference();
  if (rows.size() != ref.size()) throw std::invalid_argument("table-1 output needs exactly 88 rows");
  out << kHeader << ",reference,dev_n0,dev_m0\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    write_row(out, rows[i]);
    out << ',' << format_number(ref[i].reference) << ','
        << format_number(relative_deviation(rows[i].n0, ref[i].reference)) << ','
        << format_number(relative_deviation(rows[i].m0, ref[i].reference)) << '\n';
  }
}

}  // namespace hankel
