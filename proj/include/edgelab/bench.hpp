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

#ifndef EDGELAB_BENCH_HPP_
#define EDGELAB_BENCH_HPP_

#include <array>
#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "edgelab/clock.hpp"
#include "edgelab/edge.hpp"
#include "edgelab/histogram.hpp"
#include "edgelab/netmodel.hpp"

namespace edgelab {

inline constexpr std::array<double, 8> kReportPercentiles = {50, 75, 90, 97.5, 99, 99.9, 99.99, 100};

// Something that answers page requests: an in-process worker or an HTTP
// endpoint.
class Target {
 public:
  virtual ~Target() = default;
  // Throws Error(kTargetUnreachable) on transport failure.
  virtual Response fetch(std::string_view path, Clock& clock) = 0;
  virtual std::size_t purge() = 0;
  virtual void make_cold() = 0;
  // An independent connection to the same target.
  virtual std::unique_ptr<Target> connect() = 0;
  virtual std::string describe() const = 0;
};

class WorkerTarget final : public Target {
 public:
  explicit WorkerTarget(EdgeWorker& worker) : worker_(worker) {}

  Response fetch(std::string_view path, Clock& clock) override {
    return worker_.handle_request(path, clock);
  }
  std::size_t purge() override { return worker_.purge_cache(); }
  void make_cold() override { worker_.cold_worker(); }
  std::unique_ptr<Target> connect() override { return std::make_unique<WorkerTarget>(worker_); }
  std::string describe() const override;

 private:
  EdgeWorker& worker_;
};

enum class ResetPolicy { kNone, kPurge, kCold, kPurgeAndCold };

std::string_view to_string(ResetPolicy p);
std::optional<ResetPolicy> parse_reset_policy(std::string_view name);
void apply_reset(Target& target, ResetPolicy policy);

struct BenchConfig {
  Duration duration = std::chrono::seconds(30);
  int connections = 10;
  std::string target_path = "/";
  // Requests issued and thrown away before the timed run starts.
  int warmup_requests = 0;
  // Drop samples from the first second of the run.
  bool discard_first_second = false;

  // Throws Error(kInvalidArgument).
  void validate() const;
  bool operator==(const BenchConfig&) const = default;
};

struct PercentileValue {
  double percentile = 0;
  Duration value{};
};

struct BenchReport {
  std::string target;
  std::string path;
  Duration duration{};  // configured
  Duration elapsed{};   // first request start to last response
  int connections = 0;
  bool virtual_time = false;
  // Only 200 responses count as responses; everything else is an error.
  std::uint64_t total_responses = 0;
  std::uint64_t error_count = 0;
  std::uint64_t total_bytes = 0;
  double requests_per_second = 0;  // total_responses / elapsed
  double bytes_per_second = 0;     // total_bytes / elapsed
  Duration avg_latency{};
  Duration min_latency{};
  Duration max_latency{};
  std::vector<PercentileValue> percentiles;  // kReportPercentiles order

  // Value at p, which must be one of kReportPercentiles.
  Duration at(double p) const;
};

BenchReport make_bench_report(const LatencyHistogram& hist, std::string target, std::string path,
                              Duration duration, Duration elapsed, int connections,
                              std::uint64_t errors, std::uint64_t bytes, bool virtual_time);

// Closed-loop load: each of cfg.connections issues its next request as soon
// as the previous response arrives, until cfg.duration has passed. With a
// VirtualClock the connections run as tasks of the clock's sim::Scheduler
// (one is created if none is attached). Throws Error(kTargetUnreachable) if
// no request succeeded.
BenchReport run_load(Target& target, const BenchConfig& cfg, Clock& clock);

struct AuditMetric {
  Duration run_1{};
  Duration rest_median{};  // runs 2..n
  Duration rest_mean{};    // runs 2..n
};

struct AuditReport {
  std::string target;
  std::string path;
  int runs = 0;
  ResetPolicy reset = ResetPolicy::kNone;
  ThrottleProfile profile;
  std::vector<Duration> server_times;
  std::vector<Duration> fcps;
  std::vector<CacheStatus> statuses;
  std::vector<std::uint64_t> body_bytes;
  AuditMetric server_time;
  AuditMetric fcp;
};

AuditMetric summarize_runs(const std::vector<Duration>& values);

// `runs` sequential fetches of path. The reset policy is applied once,
// before run 1. Throws Error(kTargetUnreachable) if a fetch fails or is not
// a 200, and Error(kInvalidArgument) for runs < 2.
AuditReport run_audit(Target& target, std::string_view path, const ThrottleProfile& profile,
                      int runs, ResetPolicy reset, Clock& clock);

}  // namespace edgelab

#endif  // EDGELAB_BENCH_HPP_
