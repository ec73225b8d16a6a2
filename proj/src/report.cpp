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

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <limits>

#include "edgelab/error.hpp"

namespace edgelab {
namespace {

using nlohmann::json;

std::string percentile_label(double p) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", p);
  return buf;
}

std::string rest_label(int runs) {
  return runs == 2 ? std::string("2") : "2-" + std::to_string(runs);
}

json metric_json(const AuditMetric& m) {
  return {{"run_1_ns", m.run_1.count()},
          {"rest_median_ns", m.rest_median.count()},
          {"rest_mean_ns", m.rest_mean.count()}};
}

AuditMetric metric_from_json(const json& j) {
  return {Duration(j.at("run_1_ns").get<std::int64_t>()),
          Duration(j.at("rest_median_ns").get<std::int64_t>()),
          Duration(j.at("rest_mean_ns").get<std::int64_t>())};
}

json bandwidth_json(double bps) {
  return std::isinf(bps) ? json(nullptr) : json(bps);
}

double bandwidth_from_json(const json& j) {
  return j.is_null() ? std::numeric_limits<double>::infinity() : j.get<double>();
}

std::vector<json> durations_json(const std::vector<Duration>& v) {
  std::vector<json> out;
  for (const auto d : v) out.emplace_back(d.count());
  return out;
}

std::vector<Duration> durations_from_json(const json& j) {
  std::vector<Duration> out;
  for (const auto& v : j) out.emplace_back(v.get<std::int64_t>());
  return out;
}

}  // namespace

std::string format_ms(Duration d) {
  char buf[48];
  const auto ns = d.count();
  const auto whole = ns / 1'000'000;
  const auto frac = std::llabs(ns % 1'000'000);
  // Round to microseconds without going through floating point.
  auto micros = (frac + 500) / 1000;
  auto ms = whole;
  if (micros == 1000) {
    micros = 0;
    ms += ns < 0 ? -1 : 1;
  }
  std::snprintf(buf, sizeof(buf), "%s%" PRId64 ".%03" PRId64, (ns < 0 && ms == 0) ? "-" : "",
                static_cast<std::int64_t>(ms), static_cast<std::int64_t>(micros));
  return buf;
}

std::string ComparisonTable::to_csv() const {
  std::string out;
  if (!provenance.empty()) {
    out += "#";
    for (const auto& p : provenance) {
      out += ' ';
      out += p;
    }
    out += '\n';
  }
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i > 0) out += ',';
      const bool quote = cells[i].find_first_of(",\"\n") != std::string::npos;
      if (quote) {
        out += '"';
        for (const char c : cells[i]) {
          if (c == '"') out += '"';
          out += c;
        }
        out += '"';
      } else {
        out += cells[i];
      }
    }
    out += '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  return out;
}

std::string ComparisonTable::to_markdown() const {
  const auto& titles = display_header.empty() ? header : display_header;
  std::vector<std::size_t> width(titles.size(), 3);
  for (std::size_t c = 0; c < titles.size(); ++c) width[c] = std::max(width[c], titles[c].size());
  for (const auto& r : rows) {
    for (std::size_t c = 0; c < r.size() && c < width.size(); ++c) {
      width[c] = std::max(width[c], r[c].size());
    }
  }
  std::string out;
  if (!provenance.empty()) {
    out += "<!--";
    for (const auto& p : provenance) {
      out += ' ';
      out += p;
    }
    out += " -->\n\n";
  }
  // First column left-aligned, numbers right-aligned.
  const std::size_t label_cols = kind == Kind::kAudit ? 2 : 1;
  auto line = [&](const std::vector<std::string>& cells) {
    out += '|';
    for (std::size_t c = 0; c < width.size(); ++c) {
      const std::string& cell = c < cells.size() ? cells[c] : std::string();
      const std::string pad(width[c] - cell.size(), ' ');
      out += ' ';
      out += c < label_cols ? cell + pad : pad + cell;
      out += " |";
    }
    out += '\n';
  };
  line(titles);
  out += '|';
  for (std::size_t c = 0; c < width.size(); ++c) {
    out += c < label_cols ? " :" + std::string(width[c] - 1, '-') + " |"
                          : " " + std::string(width[c] - 1, '-') + ": |";
  }
  out += '\n';
  for (const auto& r : rows) line(r);
  return out;
}

ComparisonTable compare(std::span<const NamedReport> reports) {
  if (reports.empty()) throw Error(ErrorCode::kInvalidArgument, "nothing to compare");
  const bool audits = std::holds_alternative<AuditReport>(reports.front().report);
  for (const auto& r : reports) {
    if (std::holds_alternative<AuditReport>(r.report) != audits) {
      throw Error(ErrorCode::kMixedKinds, "cannot compare audit and load reports in one table");
    }
  }

  ComparisonTable table;
  if (audits) {
    table.kind = ComparisonTable::Kind::kAudit;
    const int runs = std::get<AuditReport>(reports.front().report).runs;
    const std::string rest = rest_label(runs);
    table.header = {"variant",          "page",          "fcp_run1_ms",       "fcp_rest_median_ms",
                    "fcp_rest_mean_ms", "srt_run1_ms",   "srt_rest_median_ms", "srt_rest_mean_ms"};
    table.display_header = {"Variant",
                            "Page",
                            "FCP 1",
                            "FCP " + rest + " (med.)",
                            "FCP " + rest + " (avg.)",
                            "SRT 1",
                            "SRT " + rest + " (med.)",
                            "SRT " + rest + " (avg.)"};
    for (const auto& r : reports) {
      const auto& a = std::get<AuditReport>(r.report);
      table.rows.push_back({r.variant, r.page.empty() ? a.path : r.page, format_ms(a.fcp.run_1),
                            format_ms(a.fcp.rest_median), format_ms(a.fcp.rest_mean),
                            format_ms(a.server_time.run_1), format_ms(a.server_time.rest_median),
                            format_ms(a.server_time.rest_mean)});
    }
    return table;
  }

  table.kind = ComparisonTable::Kind::kPercentiles;
  table.header = {"percentile"};
  table.display_header = {"Percentile"};
  for (const auto& r : reports) {
    table.header.push_back(r.variant);
    table.display_header.push_back(r.variant + " (ms)");
  }
  for (const double p : kReportPercentiles) {
    std::vector<std::string> row{percentile_label(p)};
    for (const auto& r : reports) row.push_back(format_ms(std::get<BenchReport>(r.report).at(p)));
    table.rows.push_back(std::move(row));
  }
  return table;
}

double max_relative_gap(const BenchReport& a, const BenchReport& b, double lo, double hi) {
  double gap = 0;
  for (const double p : kReportPercentiles) {
    if (p < lo || p > hi || p >= 100) continue;
    const double va = static_cast<double>(a.at(p).count());
    const double vb = static_cast<double>(b.at(p).count());
    if (vb <= 0) continue;
    gap = std::max(gap, std::abs(va - vb) / vb);
  }
  return gap;
}

json to_json(const BenchReport& r) {
  json percentiles = json::array();
  for (const auto& pv : r.percentiles) {
    percentiles.push_back({{"percentile", pv.percentile}, {"value_ns", pv.value.count()}});
  }
  return {{"kind", "load"},
          {"target", r.target},
          {"path", r.path},
          {"duration_ns", r.duration.count()},
          {"elapsed_ns", r.elapsed.count()},
          {"connections", r.connections},
          {"virtual_time", r.virtual_time},
          {"total_responses", r.total_responses},
          {"error_count", r.error_count},
          {"total_bytes", r.total_bytes},
          {"requests_per_second", r.requests_per_second},
          {"bytes_per_second", r.bytes_per_second},
          {"avg_latency_ns", r.avg_latency.count()},
          {"min_latency_ns", r.min_latency.count()},
          {"max_latency_ns", r.max_latency.count()},
          {"percentiles", percentiles}};
}

json to_json(const AuditReport& r) {
  json statuses = json::array();
  for (const auto s : r.statuses) statuses.push_back(std::string(to_string(s)));
  return {{"kind", "audit"},
          {"target", r.target},
          {"path", r.path},
          {"runs", r.runs},
          {"reset", std::string(to_string(r.reset))},
          {"profile",
           {{"name", r.profile.name},
            {"downlink_bps", bandwidth_json(r.profile.downlink_bps)},
            {"uplink_bps", bandwidth_json(r.profile.uplink_bps)},
            {"rtt_ns", r.profile.rtt.count()},
            {"render_overhead_ns", r.profile.render_overhead.count()}}},
          {"server_times_ns", durations_json(r.server_times)},
          {"fcps_ns", durations_json(r.fcps)},
          {"statuses", statuses},
          {"body_bytes", r.body_bytes},
          {"server_time", metric_json(r.server_time)},
          {"fcp", metric_json(r.fcp)}};
}

BenchReport bench_report_from_json(const json& j) {
  try {
    BenchReport r;
    r.target = j.at("target").get<std::string>();
    r.path = j.at("path").get<std::string>();
    r.duration = Duration(j.at("duration_ns").get<std::int64_t>());
    r.elapsed = Duration(j.at("elapsed_ns").get<std::int64_t>());
    r.connections = j.at("connections").get<int>();
    r.virtual_time = j.at("virtual_time").get<bool>();
    r.total_responses = j.at("total_responses").get<std::uint64_t>();
    r.error_count = j.at("error_count").get<std::uint64_t>();
    r.total_bytes = j.at("total_bytes").get<std::uint64_t>();
    r.requests_per_second = j.at("requests_per_second").get<double>();
    r.bytes_per_second = j.at("bytes_per_second").get<double>();
    r.avg_latency = Duration(j.at("avg_latency_ns").get<std::int64_t>());
    r.min_latency = Duration(j.at("min_latency_ns").get<std::int64_t>());
    r.max_latency = Duration(j.at("max_latency_ns").get<std::int64_t>());
    for (const auto& pv : j.at("percentiles")) {
      r.percentiles.push_back(
          {pv.at("percentile").get<double>(), Duration(pv.at("value_ns").get<std::int64_t>())});
    }
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument, std::string("bad load report: ") + e.what());
  }
}

AuditReport audit_report_from_json(const json& j) {
  try {
    AuditReport r;
    r.target = j.at("target").get<std::string>();
    r.path = j.at("path").get<std::string>();
    r.runs = j.at("runs").get<int>();
    const auto reset = parse_reset_policy(j.at("reset").get<std::string>());
    if (!reset) throw Error(ErrorCode::kInvalidArgument, "bad reset policy in audit report");
    r.reset = *reset;
    const auto& p = j.at("profile");
    r.profile.name = p.at("name").get<std::string>();
    r.profile.downlink_bps = bandwidth_from_json(p.at("downlink_bps"));
    r.profile.uplink_bps = bandwidth_from_json(p.at("uplink_bps"));
    r.profile.rtt = Duration(p.at("rtt_ns").get<std::int64_t>());
    r.profile.render_overhead = Duration(p.at("render_overhead_ns").get<std::int64_t>());
    r.server_times = durations_from_json(j.at("server_times_ns"));
    r.fcps = durations_from_json(j.at("fcps_ns"));
    for (const auto& s : j.at("statuses")) {
      const auto status = parse_cache_status(s.get<std::string>());
      if (!status) throw Error(ErrorCode::kInvalidArgument, "bad cache status in audit report");
      r.statuses.push_back(*status);
    }
    r.body_bytes = j.at("body_bytes").get<std::vector<std::uint64_t>>();
    r.server_time = metric_from_json(j.at("server_time"));
    r.fcp = metric_from_json(j.at("fcp"));
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument, std::string("bad audit report: ") + e.what());
  }
}

}  // namespace edgelab
