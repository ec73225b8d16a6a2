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

#include "edgelab/edgelab.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <limits>
#include <memory>
#include <new>
#include <sstream>
#include <string>

#include "json.hpp"

#include "edgelab/bench.hpp"
#include "edgelab/config.hpp"
#include "edgelab/edge.hpp"
#include "edgelab/error.hpp"
#include "edgelab/experiment.hpp"
#include "edgelab/histogram.hpp"
#include "edgelab/http.hpp"
#include "edgelab/netmodel.hpp"
#include "edgelab/report.hpp"
#include "edgelab/ssg.hpp"

using nlohmann::json;

struct edgelab_clock {
  std::unique_ptr<edgelab::VirtualClock> owned;
  edgelab::Clock* clock = nullptr;
};

struct edgelab_site {
  std::shared_ptr<const edgelab::SiteBuild> build;
};

struct edgelab_worker {
  // Declared first so queued work outlives nothing it points at.
  std::unique_ptr<edgelab::ManualExecutor> manual;
  std::unique_ptr<edgelab::EdgeWorker> worker;
};

struct edgelab_histogram {
  edgelab::LatencyHistogram hist;
};

struct edgelab_server {
  std::unique_ptr<edgelab::Lab> lab;
  std::unique_ptr<edgelab::EdgeServer> server;
};

namespace {

thread_local std::string last_error;

edgelab_status to_status(edgelab::ErrorCode code) {
  using edgelab::ErrorCode;
  switch (code) {
    case ErrorCode::kInvalidArgument: return EDGELAB_E_INVALID_ARGUMENT;
    case ErrorCode::kNotFound: return EDGELAB_E_NOT_FOUND;
    case ErrorCode::kUpstream: return EDGELAB_E_UPSTREAM;
    case ErrorCode::kStaleDeploy: return EDGELAB_E_STALE_DEPLOY;
    case ErrorCode::kEmptyHistogram: return EDGELAB_E_EMPTY_HISTOGRAM;
    case ErrorCode::kInvalidResponse: return EDGELAB_E_INVALID_RESPONSE;
    case ErrorCode::kTargetUnreachable: return EDGELAB_E_TARGET_UNREACHABLE;
    case ErrorCode::kMixedKinds: return EDGELAB_E_MIXED_KINDS;
    case ErrorCode::kConfig: return EDGELAB_E_CONFIG;
    case ErrorCode::kIo: return EDGELAB_E_IO;
    case ErrorCode::kPortInUse: return EDGELAB_E_PORT_IN_USE;
  }
  return EDGELAB_E_INTERNAL;
}

edgelab_status fail(edgelab_status s, const std::string& msg) {
  last_error = msg;
  return s;
}

template <typename F>
edgelab_status guarded(F&& f) {
  try {
    f();
    last_error.clear();
    return EDGELAB_OK;
  } catch (const edgelab::Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const json::exception& e) {
    return fail(EDGELAB_E_CONFIG, e.what());
  } catch (const std::bad_alloc&) {
    return fail(EDGELAB_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(EDGELAB_E_INTERNAL, e.what());
  } catch (...) {
    return fail(EDGELAB_E_INTERNAL, "unknown error");
  }
}

char* dup_string(std::string_view s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size());
  out[s.size()] = '\0';
  return out;
}

void set_out(char** out, std::string_view s) {
  if (out != nullptr) *out = dup_string(s);
}

void require(bool ok, const char* what) {
  if (!ok) throw edgelab::Error(edgelab::ErrorCode::kInvalidArgument, what);
}

edgelab::Duration ns(std::int64_t v) { return edgelab::Duration(v); }

edgelab::ExperimentConfig parse_config(const char* config_json) {
  require(config_json != nullptr, "config_json is null");
  json j;
  try {
    j = json::parse(config_json);
  } catch (const json::parse_error& e) {
    throw edgelab::Error(edgelab::ErrorCode::kConfig, e.what());
  }
  return edgelab::config_from_json(j);
}

edgelab::LogFn make_log(edgelab_log_fn log, void* user) {
  if (log == nullptr) return {};
  return [log, user](std::string_view msg) { log(std::string(msg).c_str(), user); };
}

}  // namespace

extern "C" {

const char* edgelab_version(void) { return EDGELAB_VERSION; }

const char* edgelab_status_name(edgelab_status status) {
  switch (status) {
    case EDGELAB_OK: return "ok";
    case EDGELAB_E_INVALID_ARGUMENT: return "invalid_argument";
    case EDGELAB_E_NOT_FOUND: return "not_found";
    case EDGELAB_E_UPSTREAM: return "upstream";
    case EDGELAB_E_STALE_DEPLOY: return "stale_deploy";
    case EDGELAB_E_EMPTY_HISTOGRAM: return "empty_histogram";
    case EDGELAB_E_INVALID_RESPONSE: return "invalid_response";
    case EDGELAB_E_TARGET_UNREACHABLE: return "target_unreachable";
    case EDGELAB_E_MIXED_KINDS: return "mixed_kinds";
    case EDGELAB_E_CONFIG: return "config";
    case EDGELAB_E_IO: return "io";
    case EDGELAB_E_PORT_IN_USE: return "port_in_use";
    case EDGELAB_E_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* edgelab_last_error(void) { return last_error.c_str(); }

void edgelab_string_free(char* s) { std::free(s); }

// Clocks.

edgelab_status edgelab_clock_new_system(edgelab_clock** out) {
  return guarded([&] {
    require(out != nullptr, "out is null");
    auto c = std::make_unique<edgelab_clock>();
    c->clock = &edgelab::SystemClock::instance();
    *out = c.release();
  });
}

edgelab_status edgelab_clock_new_virtual(edgelab_clock** out) {
  return guarded([&] {
    require(out != nullptr, "out is null");
    auto c = std::make_unique<edgelab_clock>();
    c->owned = std::make_unique<edgelab::VirtualClock>();
    c->clock = c->owned.get();
    *out = c.release();
  });
}

edgelab_status edgelab_clock_now_ns(const edgelab_clock* clock, int64_t* out) {
  return guarded([&] {
    require(clock != nullptr && out != nullptr, "null argument");
    *out = edgelab::elapsed_since_epoch(clock->clock->now()).count();
  });
}

edgelab_status edgelab_clock_advance_ns(edgelab_clock* clock, int64_t v) {
  return guarded([&] {
    require(clock != nullptr, "clock is null");
    require(clock->owned != nullptr, "only virtual clocks can be advanced");
    require(v >= 0, "cannot move a clock backwards");
    clock->owned->advance(ns(v));
  });
}

void edgelab_clock_free(edgelab_clock* clock) { delete clock; }

// Sites.

edgelab_status edgelab_site_build(uint64_t seed, int64_t post_count, int min_words, int max_words,
                                  int64_t prev_deploy_id, edgelab_site** out) {
  return guarded([&] {
    require(out != nullptr, "out is null");
    require(post_count >= 0, "post_count must be >= 0");
    require(min_words >= 1 && min_words <= max_words, "bad word range");
    const auto posts = edgelab::generate_posts(edgelab::Seed{seed}, post_count,
                                               edgelab::WordRange{min_words, max_words});
    auto site = std::make_unique<edgelab_site>();
    site->build = std::make_shared<const edgelab::SiteBuild>(
        edgelab::build_site(posts, prev_deploy_id));
    *out = site.release();
  });
}

int64_t edgelab_site_deploy_id(const edgelab_site* site) {
  return site == nullptr ? 0 : site->build->deploy_id;
}

size_t edgelab_site_page_count(const edgelab_site* site) {
  return site == nullptr ? 0 : site->build->pages.size();
}

edgelab_status edgelab_site_page(const edgelab_site* site, const char* path, char** body,
                                 char** sha256_hex) {
  return guarded([&] {
    require(site != nullptr && path != nullptr, "null argument");
    const edgelab::RenderedPage* page = site->build->find(path);
    if (page == nullptr) {
      throw edgelab::Error(edgelab::ErrorCode::kNotFound, std::string("no page ") + path);
    }
    std::unique_ptr<char, decltype(&std::free)> b(nullptr, &std::free);
    if (body != nullptr) b.reset(dup_string(page->body));
    set_out(sha256_hex, page->content_hash.hex());
    if (body != nullptr) *body = b.release();
  });
}

edgelab_status edgelab_site_source_digest(const edgelab_site* site, char** sha256_hex) {
  return guarded([&] {
    require(site != nullptr && sha256_hex != nullptr, "null argument");
    set_out(sha256_hex, site->build->source_digest.hex());
  });
}

void edgelab_site_free(edgelab_site* site) { delete site; }

// Workers.

void edgelab_strategy_config_init(edgelab_strategy_config* cfg) {
  if (cfg == nullptr) return;
  const edgelab::StrategyConfig d;
  cfg->strategy = EDGELAB_STRATEGY_STATIC;
  cfg->upstream_delay_ns = d.upstream_delay.count();
  cfg->ttl_ns = -1;
  cfg->cold_start_penalty_ns = d.cold_start_penalty.count();
  cfg->base_handling_ns = d.base_handling.count();
  cfg->kv_read_delay_ns = d.kv_read_delay.count();
}

edgelab_status edgelab_worker_new(const edgelab_strategy_config* cfg, int manual_background,
                                  edgelab_worker** out) {
  return guarded([&] {
    require(cfg != nullptr && out != nullptr, "null argument");
    require(cfg->strategy >= EDGELAB_STRATEGY_STATIC && cfg->strategy <= EDGELAB_STRATEGY_DPR,
            "unknown strategy");
    edgelab::StrategyConfig sc;
    sc.strategy = static_cast<edgelab::Strategy>(cfg->strategy);
    sc.upstream_delay = ns(cfg->upstream_delay_ns);
    if (cfg->ttl_ns >= 0) sc.ttl = ns(cfg->ttl_ns);
    sc.cold_start_penalty = ns(cfg->cold_start_penalty_ns);
    sc.base_handling = ns(cfg->base_handling_ns);
    sc.kv_read_delay = ns(cfg->kv_read_delay_ns);
    sc.validate();
    auto w = std::make_unique<edgelab_worker>();
    if (manual_background != 0) w->manual = std::make_unique<edgelab::ManualExecutor>();
    w->worker = std::make_unique<edgelab::EdgeWorker>(sc, w->manual.get());
    *out = w.release();
  });
}

edgelab_status edgelab_worker_deploy(edgelab_worker* worker, const edgelab_site* site) {
  return guarded([&] {
    require(worker != nullptr && site != nullptr, "null argument");
    std::shared_ptr<edgelab::ContentSource> source;
    if (site->build->source) {
      source = std::make_shared<edgelab::PostStore>(site->build->source,
                                                    worker->worker->config().upstream_delay);
    }
    worker->worker->deploy(site->build, std::move(source));
  });
}

edgelab_status edgelab_worker_handle(edgelab_worker* worker, const char* path,
                                     edgelab_clock* clock, edgelab_response* out) {
  return guarded([&] {
    require(worker != nullptr && path != nullptr && clock != nullptr && out != nullptr,
            "null argument");
    const edgelab::Response r = worker->worker->handle_request(path, *clock->clock);
    out->body = dup_string(r.body_view());
    out->body_len = r.body_size();
    out->status = r.status;
    out->cache_status = static_cast<edgelab_cache_status>(r.cache_status);
    out->server_time_ns = r.server_time.count();
    out->deploy_id = r.deploy_id;
  });
}

void edgelab_response_release(edgelab_response* response) {
  if (response == nullptr) return;
  std::free(response->body);
  response->body = nullptr;
  response->body_len = 0;
}

edgelab_status edgelab_worker_purge(edgelab_worker* worker, size_t* purged) {
  return guarded([&] {
    require(worker != nullptr, "worker is null");
    const std::size_t n = worker->worker->purge_cache();
    if (purged != nullptr) *purged = n;
  });
}

edgelab_status edgelab_worker_cold(edgelab_worker* worker) {
  return guarded([&] {
    require(worker != nullptr, "worker is null");
    worker->worker->cold_worker();
  });
}

edgelab_status edgelab_worker_run_background(edgelab_worker* worker, size_t* ran) {
  return guarded([&] {
    require(worker != nullptr, "worker is null");
    std::size_t n = 0;
    if (worker->manual) {
      n = worker->manual->run_pending();
    } else {
      worker->worker->drain_background();
    }
    if (ran != nullptr) *ran = n;
  });
}

void edgelab_worker_free(edgelab_worker* worker) { delete worker; }

// Histograms.

edgelab_status edgelab_histogram_new(edgelab_histogram** out) {
  return guarded([&] {
    require(out != nullptr, "out is null");
    *out = new edgelab_histogram();
  });
}

edgelab_status edgelab_histogram_record_ns(edgelab_histogram* h, int64_t v) {
  return guarded([&] {
    require(h != nullptr, "histogram is null");
    h->hist.record(ns(v));
  });
}

edgelab_status edgelab_histogram_percentile_ns(const edgelab_histogram* h, double p,
                                               int64_t* out) {
  return guarded([&] {
    require(h != nullptr && out != nullptr, "null argument");
    *out = h->hist.percentile(p).count();
  });
}

uint64_t edgelab_histogram_count(const edgelab_histogram* h) {
  return h == nullptr ? 0 : h->hist.total_count();
}

void edgelab_histogram_free(edgelab_histogram* h) { delete h; }

edgelab_status edgelab_fcp_proxy_ns(int64_t server_time_ns, uint64_t body_bytes,
                                    const char* profile, int64_t render_overhead_ns,
                                    int64_t* out) {
  return guarded([&] {
    require(profile != nullptr && out != nullptr, "null argument");
    auto p = edgelab::ThrottleProfile::preset(profile);
    require(p.has_value(), "unknown throttle profile");
    p->render_overhead = ns(render_overhead_ns);
    *out = edgelab::fcp_proxy(ns(server_time_ns), body_bytes, *p).count();
  });
}

// High-level operations.

edgelab_status edgelab_config_resolve(const char* config_path, const char* overrides_json,
                                      char** out_json) {
  return guarded([&] {
    require(out_json != nullptr, "out_json is null");
    json base = edgelab::config_to_json(edgelab::ExperimentConfig::default_preset());
    if (config_path != nullptr) {
      std::ifstream is(config_path);
      if (!is) {
        throw edgelab::Error(edgelab::ErrorCode::kIo,
                             std::string("cannot read config ") + config_path);
      }
      std::stringstream ss;
      ss << is.rdbuf();
      try {
        base = json::parse(ss.str());
      } catch (const json::parse_error& e) {
        throw edgelab::Error(edgelab::ErrorCode::kConfig, std::string(config_path) + ": " + e.what());
      }
      if (!base.is_object()) {
        throw edgelab::Error(edgelab::ErrorCode::kConfig, "config must be a JSON object");
      }
    }
    if (overrides_json != nullptr) {
      json patch;
      try {
        patch = json::parse(overrides_json);
      } catch (const json::parse_error& e) {
        throw edgelab::Error(edgelab::ErrorCode::kConfig, std::string("overrides: ") + e.what());
      }
      base.merge_patch(patch);
    }
    set_out(out_json, edgelab::config_to_json(edgelab::config_from_json(base)).dump(2));
  });
}

edgelab_status edgelab_build(const char* config_json, const char* out_dir, edgelab_log_fn log,
                             void* user, char** result_json) {
  return guarded([&] {
    require(out_dir != nullptr, "out_dir is null");
    const auto cfg = parse_config(config_json);
    const auto r = edgelab::run_build(cfg, out_dir, make_log(log, user));
    json j = {{"deploy_id", r.build.deploy_id},
              {"pages", r.build.pages.size()},
              {"incremental", r.incremental},
              {"rebuilt_paths", r.rebuilt_paths},
              {"written", r.written},
              {"removed", r.removed},
              {"source_digest", r.build.source_digest.hex()}};
    set_out(result_json, j.dump(2));
  });
}

edgelab_status edgelab_experiment_run(const char* config_json, const char* out_dir,
                                      edgelab_log_fn log, void* user, char** summary_json) {
  return guarded([&] {
    require(out_dir != nullptr, "out_dir is null");
    const auto cfg = parse_config(config_json);
    const json summary = edgelab::run_experiment(cfg, make_log(log, user));
    edgelab::write_outputs(summary, out_dir);
    set_out(summary_json, summary.dump(2));
  });
}

edgelab_status edgelab_report(const char* summary_path, const char* out_dir, char** files_json) {
  return guarded([&] {
    require(summary_path != nullptr && out_dir != nullptr, "null argument");
    json files = json::array();
    for (const auto& f : edgelab::write_report(summary_path, out_dir)) files.push_back(f.string());
    set_out(files_json, files.dump(2));
  });
}

edgelab_status edgelab_bench_run(const char* url, const char* path, double duration_s,
                                 int connections, int warmup_requests, char** report_json) {
  return guarded([&] {
    require(url != nullptr && path != nullptr, "null argument");
    require(duration_s > 0 && duration_s < 1e6, "duration_s out of range");
    auto target = edgelab::make_http_target(url);
    edgelab::BenchConfig cfg;
    cfg.duration = edgelab::Duration(static_cast<std::int64_t>(duration_s * 1e9));
    cfg.connections = connections;
    cfg.target_path = path;
    cfg.warmup_requests = warmup_requests;
    const auto r = edgelab::run_load(*target, cfg, edgelab::SystemClock::instance());
    set_out(report_json, edgelab::to_json(r).dump(2));
  });
}

edgelab_status edgelab_audit_run(const char* url, const char* path, const char* profile,
                                 int64_t render_overhead_ns, int runs, const char* reset,
                                 char** report_json) {
  return guarded([&] {
    require(url != nullptr && path != nullptr && profile != nullptr && reset != nullptr,
            "null argument");
    auto p = edgelab::ThrottleProfile::preset(profile);
    require(p.has_value(), "unknown throttle profile");
    p->render_overhead = ns(render_overhead_ns);
    const auto policy = edgelab::parse_reset_policy(reset);
    require(policy.has_value(), "unknown reset policy");
    auto target = edgelab::make_http_target(url);
    const auto r =
        edgelab::run_audit(*target, path, *p, runs, *policy, edgelab::SystemClock::instance());
    set_out(report_json, edgelab::to_json(r).dump(2));
  });
}

edgelab_status edgelab_serve_start(const char* config_json, edgelab_server** out) {
  return guarded([&] {
    require(out != nullptr, "out is null");
    auto cfg = parse_config(config_json);
    cfg.deterministic = false;
    auto s = std::make_unique<edgelab_server>();
    s->lab = std::make_unique<edgelab::Lab>(cfg);
    s->server = s->lab->make_server();
    s->server->start();
    *out = s.release();
  });
}

edgelab_status edgelab_server_port_map(const edgelab_server* server, char** out_json) {
  return guarded([&] {
    require(server != nullptr && out_json != nullptr, "null argument");
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& [name, port] : server->server->port_map()) j[name] = port;
    set_out(out_json, j.dump());
  });
}

void edgelab_server_stop(edgelab_server* server) {
  if (server != nullptr && server->server) server->server->stop();
}

void edgelab_server_free(edgelab_server* server) {
  if (server == nullptr) return;
  edgelab_server_stop(server);
  delete server;
}

}  // extern "C"
