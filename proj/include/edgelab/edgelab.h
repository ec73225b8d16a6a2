/* Copyright 2026 The edgelab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to libedgelab. Every call returns an edgelab_status; on
 * failure edgelab_last_error() describes it (per thread). Strings returned
 * through char** are heap-allocated and released with edgelab_string_free.
 * All durations are nanoseconds. */

#ifndef EDGELAB_EDGELAB_H_
#define EDGELAB_EDGELAB_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define EDGELAB_API __declspec(dllexport)
#else
#define EDGELAB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum edgelab_status {
  EDGELAB_OK = 0,
  EDGELAB_E_INVALID_ARGUMENT = 1,
  EDGELAB_E_NOT_FOUND = 2,
  EDGELAB_E_UPSTREAM = 3,
  EDGELAB_E_STALE_DEPLOY = 4,
  EDGELAB_E_EMPTY_HISTOGRAM = 5,
  EDGELAB_E_INVALID_RESPONSE = 6,
  EDGELAB_E_TARGET_UNREACHABLE = 7,
  EDGELAB_E_MIXED_KINDS = 8,
  EDGELAB_E_CONFIG = 9,
  EDGELAB_E_IO = 10,
  EDGELAB_E_PORT_IN_USE = 11,
  EDGELAB_E_INTERNAL = 99
} edgelab_status;

typedef enum edgelab_strategy {
  EDGELAB_STRATEGY_STATIC = 0,
  EDGELAB_STRATEGY_SSR = 1,
  EDGELAB_STRATEGY_ISR = 2,
  EDGELAB_STRATEGY_SWR = 3,
  EDGELAB_STRATEGY_DPR = 4
} edgelab_strategy;

typedef enum edgelab_cache_status {
  EDGELAB_CACHE_HIT = 0,
  EDGELAB_CACHE_MISS = 1,
  EDGELAB_CACHE_STALE = 2,
  EDGELAB_CACHE_BYPASS = 3
} edgelab_cache_status;

typedef struct edgelab_clock edgelab_clock;
typedef struct edgelab_site edgelab_site;
typedef struct edgelab_worker edgelab_worker;
typedef struct edgelab_histogram edgelab_histogram;
typedef struct edgelab_server edgelab_server;

typedef void (*edgelab_log_fn)(const char* message, void* user);

EDGELAB_API const char* edgelab_version(void);
EDGELAB_API const char* edgelab_status_name(edgelab_status status);
EDGELAB_API const char* edgelab_last_error(void);
EDGELAB_API void edgelab_string_free(char* s);

/* Clocks. The system clock handle is a view of the process-wide clock. */
EDGELAB_API edgelab_status edgelab_clock_new_system(edgelab_clock** out);
EDGELAB_API edgelab_status edgelab_clock_new_virtual(edgelab_clock** out);
EDGELAB_API edgelab_status edgelab_clock_now_ns(const edgelab_clock* clock, int64_t* out);
/* Virtual clocks only. */
EDGELAB_API edgelab_status edgelab_clock_advance_ns(edgelab_clock* clock, int64_t ns);
EDGELAB_API void edgelab_clock_free(edgelab_clock* clock);

/* Sites. */
EDGELAB_API edgelab_status edgelab_site_build(uint64_t seed, int64_t post_count, int min_words,
                                              int max_words, int64_t prev_deploy_id,
                                              edgelab_site** out);
EDGELAB_API int64_t edgelab_site_deploy_id(const edgelab_site* site);
EDGELAB_API size_t edgelab_site_page_count(const edgelab_site* site);
/* body and sha256_hex may each be NULL. */
EDGELAB_API edgelab_status edgelab_site_page(const edgelab_site* site, const char* path,
                                             char** body, char** sha256_hex);
EDGELAB_API edgelab_status edgelab_site_source_digest(const edgelab_site* site,
                                                      char** sha256_hex);
EDGELAB_API void edgelab_site_free(edgelab_site* site);

/* Workers. */
typedef struct edgelab_strategy_config {
  edgelab_strategy strategy;
  int64_t upstream_delay_ns;
  int64_t ttl_ns; /* < 0: infinite */
  int64_t cold_start_penalty_ns;
  int64_t base_handling_ns;
  int64_t kv_read_delay_ns;
} edgelab_strategy_config;

typedef struct edgelab_response {
  int status;
  edgelab_cache_status cache_status;
  int64_t server_time_ns;
  int64_t deploy_id;
  char* body; /* NUL-terminated; release with edgelab_response_release */
  size_t body_len;
} edgelab_response;

EDGELAB_API void edgelab_strategy_config_init(edgelab_strategy_config* cfg);
/* manual_background != 0 queues background work until
 * edgelab_worker_run_background; otherwise it runs on threads. */
EDGELAB_API edgelab_status edgelab_worker_new(const edgelab_strategy_config* cfg,
                                              int manual_background, edgelab_worker** out);
EDGELAB_API edgelab_status edgelab_worker_deploy(edgelab_worker* worker, const edgelab_site* site);
EDGELAB_API edgelab_status edgelab_worker_handle(edgelab_worker* worker, const char* path,
                                                 edgelab_clock* clock, edgelab_response* out);
EDGELAB_API void edgelab_response_release(edgelab_response* response);
EDGELAB_API edgelab_status edgelab_worker_purge(edgelab_worker* worker, size_t* purged);
EDGELAB_API edgelab_status edgelab_worker_cold(edgelab_worker* worker);
EDGELAB_API edgelab_status edgelab_worker_run_background(edgelab_worker* worker, size_t* ran);
EDGELAB_API void edgelab_worker_free(edgelab_worker* worker);

/* Latency histograms. */
EDGELAB_API edgelab_status edgelab_histogram_new(edgelab_histogram** out);
EDGELAB_API edgelab_status edgelab_histogram_record_ns(edgelab_histogram* h, int64_t ns);
EDGELAB_API edgelab_status edgelab_histogram_percentile_ns(const edgelab_histogram* h, double p,
                                                           int64_t* out);
EDGELAB_API uint64_t edgelab_histogram_count(const edgelab_histogram* h);
EDGELAB_API void edgelab_histogram_free(edgelab_histogram* h);

/* First contentful paint proxy under a named throttle profile. */
EDGELAB_API edgelab_status edgelab_fcp_proxy_ns(int64_t server_time_ns, uint64_t body_bytes,
                                                const char* profile, int64_t render_overhead_ns,
                                                int64_t* out);

/* High-level operations. Configs travel as JSON text. */

/* Reads config_path (NULL: built-in defaults), applies overrides_json as a
 * merge patch (may be NULL), validates and returns the normalized config. */
EDGELAB_API edgelab_status edgelab_config_resolve(const char* config_path,
                                                  const char* overrides_json, char** out_json);
EDGELAB_API edgelab_status edgelab_build(const char* config_json, const char* out_dir,
                                         edgelab_log_fn log, void* user, char** result_json);
/* Runs the experiment and writes summary.json and the tables to out_dir.
 * summary_json may be NULL. */
EDGELAB_API edgelab_status edgelab_experiment_run(const char* config_json, const char* out_dir,
                                                  edgelab_log_fn log, void* user,
                                                  char** summary_json);
EDGELAB_API edgelab_status edgelab_report(const char* summary_path, const char* out_dir,
                                          char** files_json);

/* Load and audit runs against a live URL such as http://127.0.0.1:8080. */
EDGELAB_API edgelab_status edgelab_bench_run(const char* url, const char* path,
                                             double duration_s, int connections,
                                             int warmup_requests, char** report_json);
EDGELAB_API edgelab_status edgelab_audit_run(const char* url, const char* path,
                                             const char* profile, int64_t render_overhead_ns,
                                             int runs, const char* reset, char** report_json);

/* Serve mode. Always runs on the system clock. */
EDGELAB_API edgelab_status edgelab_serve_start(const char* config_json, edgelab_server** out);
/* JSON object mapping listener name to port. */
EDGELAB_API edgelab_status edgelab_server_port_map(const edgelab_server* server, char** out_json);
EDGELAB_API void edgelab_server_stop(edgelab_server* server);
EDGELAB_API void edgelab_server_free(edgelab_server* server);

#ifdef __cplusplus
}
#endif

#endif /* EDGELAB_EDGELAB_H_ */
