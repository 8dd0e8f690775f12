#pragma once

// Grid scans over slice points: N0, M0 and their gap at every point, written
// as CSV for contour plotting.

#include <array>
#include <cmath>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hankel/core.hpp"
#include "hankel/psd_bound.hpp"
#include "hankel/sos_bound.hpp"

namespace hankel {

/// Slice coordinates in point order: v2, v6, v1, v3, v5.
inline constexpr std::array<std::string_view, 5> kCoordinateNames = {"v2", "v6", "v1", "v3", "v5"};

/// Index into kCoordinateNames; throws std::invalid_argument for unknown names.
std::size_t coordinate_index(std::string_view name);

struct Axis {
  double min = 0.0;
  double max = 0.0;
  int steps = 1;

  static Axis fixed(double value) { return {value, value, 1}; }
  /// Evenly spaced, endpoints included; {min} when steps == 1.
  std::vector<double> values() const;
  bool swept() const { return steps > 1; }
};

/// "<min>:<max>:<steps>"
Axis parse_axis(std::string_view text);

struct GridSpec {
  std::array<Axis, 5> axes{};  // fixed at 0 by default
  SearchOptions search;
  M0Options sos;
  int jobs = 0;  // 0: hardware concurrency

  /// Throws std::invalid_argument on steps < 1, min > max or non-finite bounds.
  void validate() const;
  /// Row-major enumeration, v2 outermost and v5 innermost.
  std::vector<SlicePoint> points() const;
};

enum class RowStatus { Ok, SkippedDomain, Error };

std::string_view to_string(RowStatus s);

struct ScanRow {
  SlicePoint point;
  double n0 = std::numeric_limits<double>::quiet_NaN();
  double m0 = std::numeric_limits<double>::quiet_NaN();
  double gap = std::numeric_limits<double>::quiet_NaN();
  std::optional<bool> pns_free;  // set only for Ok rows
  RowStatus status = RowStatus::Error;
};

/// max(1e-3, 1e-2 n0): the gap below which a point counts as PNS-free.
double gap_tolerance(double n0);

/// One slice point: skipped outside the effective domain, Error if a solver
/// fails to converge.
ScanRow scan_point(const SlicePoint& p, const SearchOptions& search, const M0Options& sos);

/// Points are independent; a pool of `jobs` workers fills rows in input order.
std::vector<ScanRow> run_points(const std::vector<SlicePoint>& points, const SearchOptions& search,
                                const M0Options& sos, int jobs);

std::vector<ScanRow> run_scan(const GridSpec& spec);

struct ScanSummary {
  std::size_t ok = 0;
  std::size_t skipped = 0;
  std::size_t errors = 0;
  double max_gap = 0.0;  // over Ok rows
  bool all_pns_free = true;
};

ScanSummary summarize(const std::vector<ScanRow>& rows);

/// Columns v2,v6,v1,v3,v5,n0,m0,gap,pns_free,status; header always present;
/// numbers with 10 significant digits; missing values as empty fields.
void write_csv(std::ostream& out, const std::vector<ScanRow>& rows);
/// Inverse of write_csv. Throws std::invalid_argument on malformed input.
std::vector<ScanRow> read_csv(std::istream& in);

/// "%.10g"
std::string format_number(double x);

struct Table1Entry {
  double v2;
  double v6;
  double reference;  // M0 = N0 at (v2, v6, 0, 0, 0), three significant figures
};

/// The 11 x 8 reference grid, v2 outer, v6 inner.
const std::array<Table1Entry, 88>& table1_reference();

std::vector<SlicePoint> table1_points();

/// |value - reference| / reference
double relative_deviation(double value, double reference);

/// write_csv columns plus reference, dev_n0, dev_m0.
void write_table1_csv(std::ostream& out, const std::vector<ScanRow>& rows);

}  // namespace hankel
