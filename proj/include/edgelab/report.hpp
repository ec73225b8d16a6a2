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

#ifndef EDGELAB_REPORT_HPP_
#define EDGELAB_REPORT_HPP_

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "edgelab/bench.hpp"

namespace edgelab {

struct NamedReport {
  std::string variant;
  // Short page label for audits ("index", "post"); empty for load runs.
  std::string page;
  std::variant<BenchReport, AuditReport> report;
};

// Rows are plain strings so that CSV and markdown render identically.
struct ComparisonTable {
  enum class Kind { kAudit, kPercentiles };

  Kind kind = Kind::kAudit;
  std::vector<std::string> header;          // CSV column names
  std::vector<std::string> display_header;  // markdown column titles
  std::vector<std::vector<std::string>> rows;
  // "key=value" pairs describing where the numbers came from.
  std::vector<std::string> provenance;

  // CSV with a leading "# key=value ..." provenance line when present.
  std::string to_csv() const;
  std::string to_markdown() const;
};

// Audits become one row per (variant, page) with run 1, median and mean of
// the remaining runs for FCP and server response time. Load runs become one
// row per percentile with one column per variant. Throws Error(kMixedKinds)
// when both kinds are present and Error(kInvalidArgument) for an empty list.
ComparisonTable compare(std::span<const NamedReport> reports);

// Largest |a - b| / b over the reported percentiles in [lo, hi]. p100 is
// never part of a verdict: it is a single outlier sample.
double max_relative_gap(const BenchReport& a, const BenchReport& b, double lo = 50,
                        double hi = 99.99);

// Milliseconds with three decimals, e.g. "100.000".
std::string format_ms(Duration d);

nlohmann::json to_json(const BenchReport& r);
nlohmann::json to_json(const AuditReport& r);
BenchReport bench_report_from_json(const nlohmann::json& j);
AuditReport audit_report_from_json(const nlohmann::json& j);

}  // namespace edgelab

#endif  // EDGELAB_REPORT_HPP_
