// Copyright 2026 The edgelab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "edgelab/report.hpp"

#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "edgelab/error.hpp"

namespace edgelab {
namespace {

using std::chrono::milliseconds;

BenchReport load_report(std::int64_t base_us) {
  LatencyHistogram h;
  for (int i = 1; i <= 1000; ++i) h.record(std::chrono::microseconds(base_us + i));
  return make_bench_report(h, "t", "/", std::chrono::seconds(1), std::chrono::seconds(1), 4, 0,
                           1000, true);
}

AuditReport audit_report(int runs) {
  AuditReport a;
  a.target = "t";
  a.path = "/posts/post-0";
  a.runs = runs;
  a.profile = ThrottleProfile::mobile_throttled();
  for (int i = 0; i < runs; ++i) {
    const Duration st = i == 0 ? milliseconds(101) : milliseconds(1);
    a.server_times.push_back(st);
    a.fcps.push_back(st + milliseconds(150));
    a.statuses.push_back(i == 0 ? CacheStatus::kMiss : CacheStatus::kHit);
    a.body_bytes.push_back(0);
  }
  a.server_time = summarize_runs(a.server_times);
  a.fcp = summarize_runs(a.fcps);
  return a;
}

TEST(ReportTest, FormatMs) {
  EXPECT_EQ(format_ms(Duration::zero()), "0.000");
  EXPECT_EQ(format_ms(milliseconds(101)), "101.000");
  EXPECT_EQ(format_ms(Duration(1'234'567)), "1.235");
  EXPECT_EQ(format_ms(Duration(999'999'600)), "1000.000");
  EXPECT_EQ(format_ms(Duration(-500'000)), "-0.500");
}

TEST(ReportTest, EmptyAndMixedInputs) {
  EXPECT_THROW(compare({}), Error);
  std::vector<NamedReport> mixed = {{"a", "", load_report(0)}, {"b", "index", audit_report(3)}};
  try {
    compare(mixed);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMixedKinds);
  }
}

TEST(ReportTest, AuditTable) {
  std::vector<NamedReport> in = {{"isr", "post", audit_report(5)}, {"ssg", "", audit_report(2)}};
  const ComparisonTable t = compare(in);
  EXPECT_EQ(t.kind, ComparisonTable::Kind::kAudit);
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.rows[0],
            (std::vector<std::string>{"isr", "post", "251.000", "151.000", "151.000", "101.000",
                                      "1.000", "1.000"}));
  EXPECT_EQ(t.rows[1][1], "/posts/post-0");
  EXPECT_EQ(t.display_header[3], "FCP 2-5 (med.)");
}

TEST(ReportTest, PercentileTable) {
  std::vector<NamedReport> in = {{"ssr", "", load_report(100'000)}, {"ssg", "", load_report(0)}};
  const ComparisonTable t = compare(in);
  EXPECT_EQ(t.kind, ComparisonTable::Kind::kPercentiles);
  EXPECT_EQ(t.header, (std::vector<std::string>{"percentile", "ssr", "ssg"}));
  ASSERT_EQ(t.rows.size(), kReportPercentiles.size());
  EXPECT_EQ(t.rows[3][0], "97.5");
  EXPECT_EQ(t.rows.back()[0], "100");
  EXPECT_EQ(t.rows.back()[1], "101.000");
  EXPECT_EQ(t.rows.back()[2], "1.000");
}

TEST(ReportTest, CsvQuotingAndProvenance) {
  ComparisonTable t;
  t.header = {"a", "b"};
  t.rows = {{"x,y", "say \"hi\""}, {"1", "2"}};
  t.provenance = {"seed=42", "clock=virtual"};
  EXPECT_EQ(t.to_csv(), "# seed=42 clock=virtual\na,b\n\"x,y\",\"say \"\"hi\"\"\"\n1,2\n");
  t.provenance.clear();
  EXPECT_EQ(t.to_csv().substr(0, 4), "a,b\n");
}

TEST(ReportTest, Markdown) {
  ComparisonTable t;
  t.kind = ComparisonTable::Kind::kPercentiles;
  t.header = {"percentile", "x"};
  t.display_header = {"Percentile", "x (ms)"};
  t.rows = {{"50", "1.000"}};
  EXPECT_EQ(t.to_markdown(),
            "| Percentile | x (ms) |\n"
            "| :--------- | -----: |\n"
            "| 50         |  1.000 |\n");
  t.provenance = {"seed=1"};
  EXPECT_EQ(t.to_markdown().substr(0, 18), "<!-- seed=1 -->\n\n|");
}

TEST(ReportTest, MaxRelativeGap) {
  const BenchReport a = load_report(0);
  EXPECT_DOUBLE_EQ(max_relative_gap(a, a), 0.0);
  const BenchReport b = load_report(1000);
  const double g = max_relative_gap(b, a, 50, 99);
  EXPECT_GT(g, 0.9);
  EXPECT_LT(g, 2.1);
  EXPECT_GE(max_relative_gap(b, a, 50, 50), g - 1e-12);
}

TEST(ReportTest, JsonRoundTrip) {
  const BenchReport b = load_report(500);
  const BenchReport b2 = bench_report_from_json(to_json(b));
  EXPECT_EQ(b2.total_responses, b.total_responses);
  EXPECT_EQ(b2.elapsed, b.elapsed);
  EXPECT_EQ(b2.virtual_time, b.virtual_time);
  for (double p : kReportPercentiles) EXPECT_EQ(b2.at(p), b.at(p));
  EXPECT_EQ(to_json(b2), to_json(b));

  const AuditReport a = audit_report(4);
  const AuditReport a2 = audit_report_from_json(to_json(a));
  EXPECT_EQ(a2.server_times, a.server_times);
  EXPECT_EQ(a2.fcps, a.fcps);
  EXPECT_EQ(a2.statuses, a.statuses);
  EXPECT_EQ(a2.reset, a.reset);
  EXPECT_EQ(a2.profile.name, a.profile.name);
  EXPECT_EQ(to_json(a2), to_json(a));

  EXPECT_THROW(bench_report_from_json(nlohmann::json::object()), Error);
}

}  // namespace
}  // namespace edgelab
