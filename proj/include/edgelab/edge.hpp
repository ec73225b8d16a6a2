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

#ifndef EDGELAB_EDGE_HPP_
#define EDGELAB_EDGE_HPP_

#include <atomic>
#include <chrono>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "edgelab/clock.hpp"
#include "edgelab/content.hpp"
#include "edgelab/kv_cache.hpp"
#include "edgelab/ssg.hpp"

namespace edgelab {

enum class Strategy { kStatic, kSsr, kIsr, kSwr, kDpr };

std::string_view to_string(Strategy s);
std::optional<Strategy> parse_strategy(std::string_view name);

enum class CacheStatus { kHit, kMiss, kStale, kBypass };

std::string_view to_string(CacheStatus s);
std::optional<CacheStatus> parse_cache_status(std::string_view name);

struct StrategyConfig {
  Strategy strategy = Strategy::kStatic;
  Duration upstream_delay = std::chrono::milliseconds(100);
  // Staleness horizon for ISR and SWR. nullopt means infinite. Ignored by
  // STATIC, SSR and DPR.
  std::optional<Duration> ttl;
  // Added to the first request a cold worker handles. 0 behaves like an
  // isolate-based platform, > 0 like a container-based one.
  Duration cold_start_penalty = Duration::zero();
  // Fixed cost of running the worker script for any request.
  Duration base_handling = std::chrono::milliseconds(1);
  // Latency of one KV read, for strategies that consult the cache.
  Duration kv_read_delay = Duration::zero();

  // Throws Error(kInvalidArgument).
  void validate() const;
  bool operator==(const StrategyConfig&) const = default;
};

struct Response {
  int status = 200;
  std::shared_ptr<const std::string> body;
  // Request arrival to first byte, measured on the request's clock.
  Duration server_time = Duration::zero();
  CacheStatus cache_status = CacheStatus::kBypass;
  std::int64_t deploy_id = 0;

  std::string_view body_view() const { return body ? std::string_view(*body) : std::string_view(); }
  std::size_t body_size() const { return body ? body->size() : 0; }
};

struct WorkerStats {
  std::uint64_t requests = 0;
  std::uint64_t renders = 0;
  std::uint64_t revalidations_scheduled = 0;
  std::uint64_t revalidations_completed = 0;
  std::uint64_t revalidations_failed = 0;
};

// Simulated edge worker instance serving one variant.
//
//   STATIC  serves the deployed page; never touches upstream.
//   SSR     renders from upstream on every request.
//   ISR     render on miss, then serve from the KV cache until the entry is
//           older than ttl (infinite by default).
//   SWR     like ISR, but an expired entry is served immediately with status
//           STALE while a single background task regenerates it.
//   DPR     ISR with infinite ttl and cache keys scoped to the deploy id.
//
// handle_request is safe to call concurrently. Unknown paths return 404
// with cache status BYPASS under every strategy and are never cached.
class EdgeWorker {
 public:
  // `background` runs SWR regeneration. When null the worker owns a
  // ThreadExecutor. A borrowed executor must be drained before the worker is
  // destroyed, and clocks passed to handle_request must outlive any
  // regeneration they trigger.
  explicit EdgeWorker(StrategyConfig cfg, Executor* background = nullptr);
  EdgeWorker(const EdgeWorker&) = delete;
  EdgeWorker& operator=(const EdgeWorker&) = delete;
  ~EdgeWorker();

  Response handle_request(std::string_view path, Clock& clock);

  // Atomically replaces the current deploy. Renders use `source`, or the
  // build's own posts when source is null. Under DPR every entry of earlier
  // deploys becomes unreachable at the swap. Throws Error(kStaleDeploy) unless
  // build->deploy_id exceeds the current one.
  void deploy(std::shared_ptr<const SiteBuild> build,
              std::shared_ptr<ContentSource> source = nullptr);

  // Empties the KV cache and returns how many entries were removed.
  std::size_t purge_cache();

  // The next request (only) pays cold_start_penalty. New workers start cold.
  void cold_worker();

  const StrategyConfig& config() const { return cfg_; }
  std::int64_t current_deploy_id() const;
  std::size_t cache_size() const { return cache_.size(); }
  WorkerStats stats() const;

  // Blocks until owned background work is done. No-op for a borrowed
  // executor.
  void drain_background();

 private:
  struct Deployment {
    std::shared_ptr<const SiteBuild> build;
    std::shared_ptr<ContentSource> source;
  };
  using DeploymentPtr = std::shared_ptr<const Deployment>;

  DeploymentPtr current() const;
  PagePtr render(const Deployment& dep, std::string_view path, Clock& clock);
  std::optional<CacheEntry> cache_lookup(const std::string& key, Clock& clock);
  void store(const Deployment& dep, const std::string& key, const std::string& path,
             PagePtr page, TimePoint now);
  void schedule_revalidation(std::string key, std::string path, std::uint64_t seen_version,
                             Clock& clock);
  void revalidate(const std::string& key, const std::string& path, std::uint64_t seen_version,
                  Clock& clock);

  const StrategyConfig cfg_;
  Executor* background_;

  mutable std::mutex deploy_mu_;
  DeploymentPtr deployment_;

  KvCache cache_;
  std::atomic<bool> cold_{true};

  std::mutex inflight_mu_;
  std::set<std::string, std::less<>> inflight_;

  std::atomic<std::uint64_t> requests_{0};
  std::atomic<std::uint64_t> renders_{0};
  std::atomic<std::uint64_t> revalidations_scheduled_{0};
  std::atomic<std::uint64_t> revalidations_completed_{0};
  std::atomic<std::uint64_t> revalidations_failed_{0};

  // Declared last so its threads are joined before anything they touch is
  // destroyed.
  std::unique_ptr<ThreadExecutor> owned_executor_;
};

// Cache key used for path under deploy deploy_id by DPR.
std::string dpr_cache_key(std::int64_t deploy_id, std::string_view path);

}  // namespace edgelab

#endif  // EDGELAB_EDGE_HPP_
