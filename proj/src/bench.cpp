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

#include "edgelab/bench.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

#include "edgelab/error.hpp"
#include "edgelab/sim.hpp"

namespace edgelab {
namespace {

struct ConnectionResult {
  LatencyHistogram hist;
  std::uint64_t errors = 0;
  std::uint64_t bytes = 0;
  TimePoint last_done{};
};

double seconds(Duration d) { return std::chrono::duration<double>(d).count(); }

// One closed-loop connection. Samples whose request started before
// `measure_from` are dropped entirely.
void drive_connection(Target& conn, const std::string& path, TimePoint deadline,
                      TimePoint measure_from, Clock& clock, bool virtual_time,
                      ConnectionResult& out) {
  while (clock.now() < deadline) {
    const TimePoint t0 = clock.now();
    bool ok = false;
    std::uint64_t size = 0;
    bool transport_failure = false;
    try {
      const Response r = conn.fetch(path, clock);
      ok = r.status == 200;
      size = r.body_size();
    } catch (const Error&) {
      transport_failure = true;
    }
    const TimePoint t1 = clock.now();
    if (virtual_time && t1 == t0 && !transport_failure) {
      throw Error(ErrorCode::kInvalidArgument,
                  "request completed in zero virtual time; closed-loop load needs a nonzero "
                  "per-request cost (base_handling)");
    }
    if (t0 >= measure_from) {
      if (ok) {
        out.hist.record(t1 - t0);
        out.bytes += size;
      } else {
        ++out.errors;
      }
      out.last_done = std::max(out.last_done, t1);
    }
    if (transport_failure) clock.sleep_for(std::chrono::milliseconds(1));
  }
}

}  // namespace

std::string WorkerTarget::describe() const {
  return "in-process:" + std::string(to_string(worker_.config().strategy));
}

std::string_view to_string(ResetPolicy p) {
  switch (p) {
    case ResetPolicy::kNone: return "none";
    case ResetPolicy::kPurge: return "purge";
    case ResetPolicy::kCold: return "cold";
    case ResetPolicy::kPurgeAndCold: return "purge+cold";
  }
  return "none";
}

std::optional<ResetPolicy> parse_reset_policy(std::string_view name) {
  for (const auto p : {ResetPolicy::kNone, ResetPolicy::kPurge, ResetPolicy::kCold,
                       ResetPolicy::kPurgeAndCold}) {
    if (to_string(p) == name) return p;
  }
  return std::nullopt;
}

void apply_reset(Target& target, ResetPolicy policy) {
  if (policy == ResetPolicy::kPurge || policy == ResetPolicy::kPurgeAndCold) target.purge();
  if (policy == ResetPolicy::kCold || policy == ResetPolicy::kPurgeAndCold) target.make_cold();
}

void BenchConfig::validate() const {
  if (duration <= Duration::zero()) throw Error(ErrorCode::kInvalidArgument, "duration must be > 0");
  if (connections < 1) throw Error(ErrorCode::kInvalidArgument, "connections must be >= 1");
  if (warmup_requests < 0) throw Error(ErrorCode::kInvalidArgument, "warmup_requests must be >= 0");
  if (target_path.empty() || target_path.front() != '/') {
    throw Error(ErrorCode::kInvalidArgument, "target_path must start with '/'");
  }
  if (discard_first_second && duration <= std::chrono::seconds(1)) {
    throw Error(ErrorCode::kInvalidArgument, "discard_first_second needs a run longer than 1 s");
  }
}

Duration BenchReport::at(double p) const {
  for (const auto& pv : percentiles) {
    if (pv.percentile == p) return pv.value;
  }
  throw Error(ErrorCode::kInvalidArgument, "percentile not reported: " + std::to_string(p));
}

BenchReport make_bench_report(const LatencyHistogram& hist, std::string target, std::string path,
                              Duration duration, Duration elapsed, int connections,
                              std::uint64_t errors, std::uint64_t bytes, bool virtual_time) {
  BenchReport report;
  report.target = std::move(target);
  report.path = std::move(path);
  report.duration = duration;
  report.elapsed = elapsed;
  report.connections = connections;
  report.virtual_time = virtual_time;
  report.total_responses = hist.total_count();
  report.error_count = errors;
  report.total_bytes = bytes;
  const double secs = seconds(elapsed);
  if (secs > 0) {
    report.requests_per_second = static_cast<double>(report.total_responses) / secs;
    report.bytes_per_second = static_cast<double>(bytes) / secs;
  }
  if (hist.total_count() > 0) {
    report.avg_latency = hist.mean();
    report.min_latency = hist.min();
    report.max_latency = hist.max();
    for (const double p : kReportPercentiles) report.percentiles.push_back({p, hist.percentile(p)});
  }
  return report;
}

BenchReport run_load(Target& target, const BenchConfig& cfg, Clock& clock) {
  cfg.validate();
  auto* vclock = dynamic_cast<VirtualClock*>(&clock);

  std::vector<std::unique_ptr<Target>> conns;
  conns.reserve(static_cast<std::size_t>(cfg.connections));
  for (int i = 0; i < cfg.connections; ++i) conns.push_back(target.connect());

  for (int i = 0; i < cfg.warmup_requests; ++i) {
    try {
      conns.front()->fetch(cfg.target_path, clock);
    } catch (const Error&) {
    }
  }

  std::vector<ConnectionResult> results(conns.size());
  const TimePoint start = clock.now();
  const TimePoint deadline = start + cfg.duration;
  const TimePoint measure_from =
      cfg.discard_first_second ? start + std::chrono::seconds(1) : start;

  if (vclock != nullptr) {
    std::unique_ptr<sim::Scheduler> local;
    sim::Scheduler* sched = vclock->scheduler();
    if (sched == nullptr) {
      local = std::make_unique<sim::Scheduler>(*vclock);
      sched = local.get();
    }
    for (std::size_t i = 0; i < conns.size(); ++i) {
      sched->spawn_at(start, [&, i] {
        drive_connection(*conns[i], cfg.target_path, deadline, measure_from, clock, true,
                         results[i]);
      });
    }
    sched->run();
  } else {
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(conns.size());
    for (std::size_t i = 0; i < conns.size(); ++i) {
      threads.emplace_back([&, i] {
        try {
          drive_connection(*conns[i], cfg.target_path, deadline, measure_from, clock, false,
                           results[i]);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      });
    }
    for (auto& t : threads) t.join();
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  LatencyHistogram merged;
  std::uint64_t error_count = 0;
  std::uint64_t bytes = 0;
  TimePoint last = measure_from;
  for (const auto& r : results) {
    merged.merge(r.hist);
    error_count += r.errors;
    bytes += r.bytes;
    last = std::max(last, r.last_done);
  }
  if (merged.total_count() == 0) {
    throw Error(ErrorCode::kTargetUnreachable,
                "no successful responses from " + target.describe() + cfg.target_path);
  }
  return make_bench_report(merged, target.describe(), cfg.target_path, cfg.duration,
                           last - measure_from, cfg.connections, error_count, bytes,
                           vclock != nullptr);
}

AuditMetric summarize_runs(const std::vector<Duration>& values) {
  if (values.size() < 2) throw Error(ErrorCode::kInvalidArgument, "need at least two runs");
  AuditMetric m;
  m.run_1 = values.front();
  std::vector<Duration::rep> rest;
  for (std::size_t i = 1; i < values.size(); ++i) rest.push_back(values[i].count());
  std::sort(rest.begin(), rest.end());
  const std::size_t n = rest.size();
  m.rest_median = Duration(n % 2 == 1 ? rest[n / 2] : (rest[n / 2 - 1] + rest[n / 2]) / 2);
  const long double sum = std::accumulate(rest.begin(), rest.end(), 0.0L);
  m.rest_mean = Duration(std::llround(sum / static_cast<long double>(n)));
  return m;
}

AuditReport run_audit(Target& target, std::string_view path, const ThrottleProfile& profile,
                      int runs, ResetPolicy reset, Clock& clock) {
  if (runs < 2) throw Error(ErrorCode::kInvalidArgument, "an audit needs at least 2 runs");
  profile.validate();
  AuditReport report;
  report.target = target.describe();
  report.path = std::string(path);
  report.runs = runs;
  report.reset = reset;
  report.profile = profile;

  apply_reset(target, reset);
  for (int i = 0; i < runs; ++i) {
    Response r;
    try {
      r = target.fetch(path, clock);
    } catch (const Error& e) {
      throw Error(ErrorCode::kTargetUnreachable, std::string("audit fetch failed: ") + e.what());
    }
    if (r.status != 200) {
      throw Error(ErrorCode::kTargetUnreachable, "audit of " + report.path + " got status " +
                                                     std::to_string(r.status));
    }
    report.server_times.push_back(r.server_time);
    report.fcps.push_back(fcp_proxy(r, profile));
    report.statuses.push_back(r.cache_status);
    report.body_bytes.push_back(r.body_size());
  }
  report.server_time = summarize_runs(report.server_times);
  report.fcp = summarize_runs(report.fcps);
  return report;
}

}  // namespace edgelab
