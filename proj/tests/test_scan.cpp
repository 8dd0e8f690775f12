#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "hankel/conditions.hpp"
#include "hankel/scan.hpp"

using namespace hankel;

namespace {

GridSpec fixed_spec(const SlicePoint& p) {
  GridSpec s;
  const auto a = p.as_array();
  for (std::size_t i = 0; i < 5; ++i) s.axes[i] = Axis::fixed(a[i]);
  s.jobs = 1;
  return s;
}

std::string csv_of(const std::vector<ScanRow>& rows) {
  std::ostringstream out;
  write_csv(out, rows);
  return out.str();
}

}  // namespace

TEST(Axis, ValuesIncludeEndpoints) {
  EXPECT_EQ(Axis::fixed(2.5).values(), std::vector<double>{2.5});
  const auto v = Axis{-1.0, 1.0, 5}.values();
  ASSERT_EQ(v.size(), 5u);
  EXPECT_EQ(v.front(), -1.0);
  EXPECT_EQ(v.back(), 1.0);
  EXPECT_DOUBLE_EQ(v[2], 0.0);
  const auto a = parse_axis("-4:4:9");
  EXPECT_EQ(a.min, -4.0);
  EXPECT_EQ(a.max, 4.0);
  EXPECT_EQ(a.steps, 9);
  EXPECT_THROW(parse_axis("0:1"), std::invalid_argument);
  EXPECT_THROW(parse_axis("0:1:2.5"), std::invalid_argument);
  EXPECT_THROW(parse_axis("0:x:2"), std::invalid_argument);
}

TEST(GridSpec, ValidatesAxes) {
  GridSpec s;
  EXPECT_NO_THROW(s.validate());
  s.axes[1] = {1.0, 0.0, 3};
  EXPECT_THROW(s.validate(), std::invalid_argument);
  s.axes[1] = {0.0, 1.0, 0};
  EXPECT_THROW(s.validate(), std::invalid_argument);
  s.axes[1] = {0.0, INFINITY, 2};
  EXPECT_THROW(s.validate(), std::invalid_argument);
  EXPECT_EQ(coordinate_index("v6"), 1u);
  EXPECT_EQ(coordinate_index("v5"), 4u);
  EXPECT_THROW(coordinate_index("v4"), std::invalid_argument);
}

TEST(GridSpec, EnumeratesV2Outermost) {
  GridSpec s;
  s.axes[0] = {0.0, 1.0, 2};
  s.axes[1] = {2.0, 3.0, 2};
  const auto pts = s.points();
  ASSERT_EQ(pts.size(), 4u);
  EXPECT_EQ(pts[0].v2, 0.0);
  EXPECT_EQ(pts[0].v6, 2.0);
  EXPECT_EQ(pts[1].v2, 0.0);
  EXPECT_EQ(pts[1].v6, 3.0);
  EXPECT_EQ(pts[2].v2, 1.0);
}

TEST(Scan, SinglePointAnchor) {
  const auto rows = run_scan(fixed_spec({1, 1, 0, 0, 0}));
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].status, RowStatus::Ok);
  EXPECT_NEAR(rows[0].n0, 1.0, 1e-3);
  EXPECT_NEAR(rows[0].m0, 1.0, 1e-3);
  EXPECT_TRUE(rows[0].pns_free.value_or(false));
  EXPECT_DOUBLE_EQ(rows[0].gap, rows[0].m0 - rows[0].n0);
}

TEST(Scan, OutsideDomainIsSkipped) {
  const auto rows = run_scan(fixed_spec({0, -0.5, 0, 0, 0}));
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].status, RowStatus::SkippedDomain);
  EXPECT_FALSE(rows[0].pns_free.has_value());
  EXPECT_TRUE(std::isnan(rows[0].n0));
  // Boundary points (eta = 1) are skipped as well.
  EXPECT_EQ(run_scan(fixed_spec({0, 0, 0, 0, 0.25}))[0].status, RowStatus::SkippedDomain);
}

TEST(Scan, GridCardinalityAndSummary) {
  GridSpec s;
  s.axes[0] = {0.5, 1.0, 2};
  s.axes[1] = {-0.5, 1.0, 2};
  s.jobs = 2;
  const auto rows = run_scan(s);
  ASSERT_EQ(rows.size(), 4u);
  const auto sum = summarize(rows);
  EXPECT_EQ(sum.ok, 2u);
  EXPECT_EQ(sum.skipped, 2u);
  EXPECT_EQ(sum.errors, 0u);
  EXPECT_TRUE(sum.all_pns_free);
  EXPECT_GE(sum.max_gap, 0.0);
  for (const auto& r : rows) {
    if (r.status == RowStatus::Ok) {
      EXPECT_GT(r.n0, 0.0);
      EXPECT_LE(r.gap, gap_tolerance(r.n0));
    }
  }
}

TEST(Scan, DeterministicAcrossWorkerCounts) {
  GridSpec s;
  s.axes[0] = {-1.0, 1.0, 3};
  s.axes[2] = {-0.2, 0.2, 2};
  s.axes[1] = Axis::fixed(0.5);
  s.jobs = 1;
  const std::string serial = csv_of(run_scan(s));
  s.jobs = 3;
  EXPECT_EQ(csv_of(run_scan(s)), serial);
  EXPECT_EQ(csv_of(run_scan(s)), serial);
}

TEST(Csv, HeaderAndFormatting) {
  ScanRow ok;
  ok.point = {1, 1, 0, 0, 0};
  ok.n0 = 1.0;
  ok.m0 = 1.0001;
  ok.gap = 1e-4;
  ok.pns_free = true;
  ok.status = RowStatus::Ok;
  ScanRow skipped;
  skipped.point = {0, -0.5, 0, 0, 0};
  skipped.status = RowStatus::SkippedDomain;
  const std::string text = csv_of({ok, skipped});
  EXPECT_EQ(text,
            "v2,v6,v1,v3,v5,n0,m0,gap,pns_free,status\n"
            "1,1,0,0,0,1,1.0001,0.0001,true,ok\n"
            "0,-0.5,0,0,0,,,,,skipped_domain\n");
  EXPECT_EQ(csv_of({}), "v2,v6,v1,v3,v5,n0,m0,gap,pns_free,status\n");
  EXPECT_EQ(format_number(1.0 / 3.0), "0.3333333333");
}

TEST(Csv, RoundTripIsBitIdentical) {
  GridSpec s;
  s.axes[0] = {-0.7, 1.3, 3};
  s.axes[1] = {-0.6, 0.9, 2};
  s.axes[4] = Axis::fixed(0.1);
  s.jobs = 1;
  const auto rows = run_scan(s);
  const std::string first = csv_of(rows);
  std::istringstream in(first);
  const auto parsed = read_csv(in);
  ASSERT_EQ(parsed.size(), rows.size());
  EXPECT_EQ(csv_of(parsed), first);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(parsed[i].status, rows[i].status);
    EXPECT_EQ(parsed[i].pns_free, rows[i].pns_free);
    // Parsed values equal the printed (10-digit) values exactly.
    if (rows[i].status == RowStatus::Ok) {
      EXPECT_EQ(parsed[i].n0, std::stod(format_number(rows[i].n0)));
    }
  }
}

TEST(Csv, RejectsMalformedInput) {
  std::istringstream bad_header("a,b\n");
  EXPECT_THROW(read_csv(bad_header), std::invalid_argument);
  std::istringstream short_row("v2,v6,v1,v3,v5,n0,m0,gap,pns_free,status\n1,2,3\n");
  EXPECT_THROW(read_csv(short_row), std::invalid_argument);
  std::istringstream bad_status("v2,v6,v1,v3,v5,n0,m0,gap,pns_free,status\n0,0,0,0,0,,,,,maybe\n");
  EXPECT_THROW(read_csv(bad_status), std::invalid_argument);
}

TEST(Table1, ReferenceGridShape) {
  const auto& t = table1_reference();
  EXPECT_EQ(t.front().v2, -4.0);
  EXPECT_EQ(t.front().v6, -0.2);
  EXPECT_EQ(t.front().reference, 3.54e4);
  EXPECT_EQ(t[6 * 8 + 4].reference, 1.0);  // (1, 1)
  EXPECT_EQ(t[8 * 8 + 4].reference, 8.0);  // (2, 1)
  EXPECT_EQ(t[10 * 8 + 2].reference, 441.0);  // (4, 0)
  EXPECT_EQ(t.back().v2, 4.0);
  EXPECT_EQ(t.back().v6, 4.0);
  for (const auto& p : table1_points()) EXPECT_TRUE(in_effective_domain(p));
  EXPECT_DOUBLE_EQ(relative_deviation(101.0, 100.0), 0.01);
}

TEST(Table1, CsvHasComparisonColumns) {
  std::vector<ScanRow> rows(88);
  const auto pts = table1_points();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rows[i].point = pts[i];
    rows[i].status = RowStatus::Ok;
    rows[i].n0 = rows[i].m0 = table1_reference()[i].reference;
    rows[i].gap = 0.0;
    rows[i].pns_free = true;
  }
  std::ostringstream out;
  write_table1_csv(out, rows);
  const std::string text = out.str();
  EXPECT_EQ(text.substr(0, text.find('\n')), "v2,v6,v1,v3,v5,n0,m0,gap,pns_free,status,reference,dev_n0,dev_m0");
  EXPECT_NE(text.find("\n-4,-0.2,0,0,0,35400,35400,0,true,ok,35400,0,0\n"), std::string::npos);
  rows.pop_back();
  EXPECT_THROW(write_table1_csv(out, rows), std::invalid_argument);
}
