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

#include "edgelab/edge.hpp"

#include <array>
#include <utility>

#include "edgelab/error.hpp"

namespace edgelab {
namespace {

constexpr std::array<std::pair<Strategy, std::string_view>, 5> kStrategyNames = {{
    {Strategy::kStatic, "STATIC"},
    {Strategy::kSsr, "SSR"},
    {Strategy::kIsr, "ISR"},
    {Strategy::kSwr, "SWR"},
    {Strategy::kDpr, "DPR"},
}};

constexpr std::array<std::pair<CacheStatus, std::string_view>, 4> kCacheStatusNames = {{
    {CacheStatus::kHit, "HIT"},
    {CacheStatus::kMiss, "MISS"},
    {CacheStatus::kStale, "STALE"},
    {CacheStatus::kBypass, "BYPASS"},
}};

bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto lower = [](char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; };
    if (lower(a[i]) != lower(b[i])) return false;
  }
  return true;
}

std::shared_ptr<const std::string> body_of(const PagePtr& page) {
  return std::shared_ptr<const std::string>(page, &page->body);
}

const std::shared_ptr<const std::string>& not_found_body() {
  static const auto body = std::make_shared<const std::string>(
      "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n"
      "<title>Not Found</title>\n</head>\n<body>\n<main>\n<h1>Not Found</h1>\n"
      "</main>\n</body>\n</html>\n");
  return body;
}

std::shared_ptr<const std::string> text_body(std::string text) {
  return std::make_shared<const std::string>(std::move(text));
}

}  // namespace

std::string_view to_string(Strategy s) {
  for (const auto& [k, name] : kStrategyNames) {
    if (k == s) return name;
  }
  return "?";
}

std::optional<Strategy> parse_strategy(std::string_view name) {
  for (const auto& [k, n] : kStrategyNames) {
    if (iequals(n, name)) return k;
  }
  if (iequals(name, "SSG")) return Strategy::kStatic;
  return std::nullopt;
}

std::string_view to_string(CacheStatus s) {
  for (const auto& [k, name] : kCacheStatusNames) {
    if (k == s) return name;
  }
  return "?";
}

std::optional<CacheStatus> parse_cache_status(std::string_view name) {
  for (const auto& [k, n] : kCacheStatusNames) {
    if (iequals(n, name)) return k;
  }
  return std::nullopt;
}

void StrategyConfig::validate() const {
  auto non_negative = [](Duration d, const char* what) {
    if (d < Duration::zero()) {
      throw Error(ErrorCode::kInvalidArgument, std::string(what) + " must be >= 0");
    }
  };
  non_negative(upstream_delay, "upstream_delay");
  non_negative(cold_start_penalty, "cold_start_penalty");
  non_negative(base_handling, "base_handling");
  non_negative(kv_read_delay, "kv_read_delay");
  if (ttl && *ttl <= Duration::zero()) {
    throw Error(ErrorCode::kInvalidArgument, "ttl must be > 0");
  }
  if (strategy == Strategy::kSwr && !ttl) {
    throw Error(ErrorCode::kInvalidArgument, "SWR requires a finite ttl");
  }
}

std::string dpr_cache_key(std::int64_t deploy_id, std::string_view path) {
  std::string key = "deploy:" + std::to_string(deploy_id) + ":";
  key += path;
  return key;
}

EdgeWorker::EdgeWorker(StrategyConfig cfg, Executor* background)
    : cfg_(std::move(cfg)), background_(background) {
  cfg_.validate();
  if (background_ == nullptr) {
    owned_executor_ = std::make_unique<ThreadExecutor>();
    background_ = owned_executor_.get();
  }
}

EdgeWorker::~EdgeWorker() { drain_background(); }

void EdgeWorker::drain_background() {
  if (owned_executor_) owned_executor_->drain();
}

EdgeWorker::DeploymentPtr EdgeWorker::current() const {
  std::lock_guard lock(deploy_mu_);
  return deployment_;
}

std::int64_t EdgeWorker::current_deploy_id() const {
  const auto dep = current();
  return dep ? dep->build->deploy_id : 0;
}

WorkerStats EdgeWorker::stats() const {
  WorkerStats s;
  s.requests = requests_.load();
  s.renders = renders_.load();
  s.revalidations_scheduled = revalidations_scheduled_.load();
  s.revalidations_completed = revalidations_completed_.load();
  s.revalidations_failed = revalidations_failed_.load();
  return s;
}

void EdgeWorker::deploy(std::shared_ptr<const SiteBuild> build,
                        std::shared_ptr<ContentSource> source) {
  if (!build) throw Error(ErrorCode::kInvalidArgument, "deploy needs a build");
  if (!source && build->source) {
    source = std::make_shared<PostStore>(build->source, cfg_.upstream_delay);
  }
  auto next = std::make_shared<const Deployment>(Deployment{build, std::move(source)});
  std::lock_guard lock(deploy_mu_);
  if (deployment_ && build->deploy_id <= deployment_->build->deploy_id) {
    throw Error(ErrorCode::kStaleDeploy,
                "deploy id " + std::to_string(build->deploy_id) + " is not newer than " +
                    std::to_string(deployment_->build->deploy_id));
  }
  deployment_ = std::move(next);
  if (cfg_.strategy == Strategy::kDpr) {
    const auto id = build->deploy_id;
    cache_.erase_if([id](const CacheEntry& e) { return e.deploy_id != id; });
  }
}

std::size_t EdgeWorker::purge_cache() { return cache_.clear(); }

void EdgeWorker::cold_worker() { cold_.store(true); }

PagePtr EdgeWorker::render(const Deployment& dep, std::string_view path, Clock& clock) {
  if (!dep.source) throw Error(ErrorCode::kUpstream, "deploy has no content source");
  ++renders_;
  if (path == kIndexPath) {
    const auto posts = dep.source->fetch_posts(clock);
    return std::make_shared<const RenderedPage>(render_index(*posts));
  }
  constexpr std::string_view kPostsPrefix = "/posts/";
  const auto id = path.starts_with(kPostsPrefix)
                      ? parse_post_slug(path.substr(kPostsPrefix.size()))
                      : std::nullopt;
  if (!id) throw Error(ErrorCode::kUpstream, "no renderer for " + std::string(path));
  return std::make_shared<const RenderedPage>(render_post(dep.source->fetch_post(*id, clock)));
}

std::optional<CacheEntry> EdgeWorker::cache_lookup(const std::string& key, Clock& clock) {
  if (cfg_.kv_read_delay > Duration::zero()) clock.sleep_for(cfg_.kv_read_delay);
  return cache_.get(key);
}

void EdgeWorker::store(const Deployment& dep, const std::string& key, const std::string& path,
                       PagePtr page, TimePoint now) {
  CacheEntry entry{path, std::move(page), now, dep.build->deploy_id, 0};
  if (cfg_.strategy != Strategy::kDpr) {
    cache_.put(key, std::move(entry));
    return;
  }
  // A render that started before a deploy must not land in the new deploy's
  // key space, and entries of the old one are garbage.
  std::lock_guard lock(deploy_mu_);
  if (deployment_ && deployment_->build->deploy_id == entry.deploy_id) {
    cache_.put(key, std::move(entry));
  }
}

void EdgeWorker::schedule_revalidation(std::string key, std::string path,
                                       std::uint64_t seen_version, Clock& clock) {
  {
    std::lock_guard lock(inflight_mu_);
    if (!inflight_.insert(key).second) return;
  }
  ++revalidations_scheduled_;
  background_->post([this, key = std::move(key), path = std::move(path), seen_version, &clock] {
    revalidate(key, path, seen_version, clock);
  });
}

void EdgeWorker::revalidate(const std::string& key, const std::string& path,
                            std::uint64_t seen_version, Clock& clock) {
  try {
    const auto dep = current();
    if (!dep || dep->build->find(path) == nullptr) {
      throw Error(ErrorCode::kNotFound, "path vanished from deploy: " + path);
    }
    auto page = render(*dep, path, clock);
    CacheEntry entry{path, std::move(page), clock.now(), dep->build->deploy_id, 0};
    // A purge or a newer write since the stale read wins over this result.
    cache_.compare_and_swap(key, seen_version, std::move(entry));
    ++revalidations_completed_;
  } catch (...) {
    ++revalidations_failed_;
  }
  std::lock_guard lock(inflight_mu_);
  inflight_.erase(key);
}

Response EdgeWorker::handle_request(std::string_view path, Clock& clock) {
  const TimePoint start = clock.now();
  ++requests_;
  Response r;
  if (cold_.exchange(false) && cfg_.cold_start_penalty > Duration::zero()) {
    clock.sleep_for(cfg_.cold_start_penalty);
  }
  clock.sleep_for(cfg_.base_handling);

  const auto finish = [&](Response& out) -> Response {
    out.server_time = clock.now() - start;
    return std::move(out);
  };

  const auto dep = current();
  if (!dep) {
    r.status = 503;
    r.body = text_body("no deploy\n");
    return finish(r);
  }
  r.deploy_id = dep->build->deploy_id;
  const RenderedPage* deployed = dep->build->find(path);
  if (deployed == nullptr) {
    r.status = 404;
    r.body = not_found_body();
    return finish(r);
  }

  const std::string path_str(path);
  try {
    switch (cfg_.strategy) {
      case Strategy::kStatic: {
        r.body = body_of(dep->build->pages.find(path)->second);
        r.cache_status = CacheStatus::kBypass;
        break;
      }
      case Strategy::kSsr: {
        r.body = body_of(render(*dep, path, clock));
        r.cache_status = CacheStatus::kBypass;
        break;
      }
      case Strategy::kIsr:
      case Strategy::kDpr: {
        const bool dpr = cfg_.strategy == Strategy::kDpr;
        const std::string key = dpr ? dpr_cache_key(dep->build->deploy_id, path) : path_str;
        const auto ttl = dpr ? std::nullopt : cfg_.ttl;
        const auto entry = cache_lookup(key, clock);
        if (entry && !entry->stale(clock.now(), ttl)) {
          r.body = body_of(entry->page);
          r.deploy_id = entry->deploy_id;
          r.cache_status = CacheStatus::kHit;
          break;
        }
        auto page = render(*dep, path, clock);
        store(*dep, key, path_str, page, clock.now());
        r.body = body_of(page);
        r.cache_status = CacheStatus::kMiss;
        break;
      }
      case Strategy::kSwr: {
        const auto entry = cache_lookup(path_str, clock);
        if (!entry) {
          auto page = render(*dep, path, clock);
          store(*dep, path_str, path_str, page, clock.now());
          r.body = body_of(page);
          r.cache_status = CacheStatus::kMiss;
          break;
        }
        r.body = body_of(entry->page);
        r.deploy_id = entry->deploy_id;
        if (entry->stale(clock.now(), cfg_.ttl)) {
          r.cache_status = CacheStatus::kStale;
          schedule_revalidation(path_str, path_str, entry->version, clock);
        } else {
          r.cache_status = CacheStatus::kHit;
        }
        break;
      }
    }
  } catch (const Error&) {
    r.status = 502;
    r.body = text_body("upstream error\n");
    r.cache_status = (cfg_.strategy == Strategy::kStatic || cfg_.strategy == Strategy::kSsr)
                         ? CacheStatus::kBypass
                         : CacheStatus::kMiss;
  }
  return finish(r);
}

}  // namespace edgelab
