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

// edgelab command line. Talks to the library through the C API only.

#include <pthread.h>
#include <signal.h>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "edgelab/edgelab.h"

namespace {

using nlohmann::json;

enum ExitCode {
  kExitOk = 0,
  kExitFailure = 1,
  kExitConfig = 2,
  kExitIo = 3,
  kExitPortInUse = 4,
  kExitUnreachable = 5,
};

int exit_code_for(edgelab_status s) {
  switch (s) {
    case EDGELAB_OK: return kExitOk;
    case EDGELAB_E_CONFIG:
    case EDGELAB_E_INVALID_ARGUMENT: return kExitConfig;
    case EDGELAB_E_IO: return kExitIo;
    case EDGELAB_E_PORT_IN_USE: return kExitPortInUse;
    case EDGELAB_E_TARGET_UNREACHABLE: return kExitUnreachable;
    default: return kExitFailure;
  }
}

// Thrown to unwind with an exit code after the message has been printed.
struct Exit {
  int code;
};

void check(edgelab_status s, const char* what) {
  if (s == EDGELAB_OK) return;
  std::cerr << "edgelab: " << what << ": " << edgelab_last_error() << " ("
            << edgelab_status_name(s) << ")\n";
  throw Exit{exit_code_for(s)};
}

// Owns a string handed out by the library.
class LibString {
 public:
  LibString() = default;
  LibString(const LibString&) = delete;
  LibString& operator=(const LibString&) = delete;
  ~LibString() { edgelab_string_free(p_); }

  char** out() { return &p_; }
  std::string str() const { return p_ == nullptr ? std::string() : std::string(p_); }

 private:
  char* p_ = nullptr;
};

void log_line(const char* msg, void*) { std::cerr << "edgelab: " << msg << "\n"; }

struct GlobalFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  bool deterministic = false;
  std::string out;
};

json resolve_config(const GlobalFlags& g, const json& extra) {
  json patch = extra.is_null() ? json::object() : extra;
  if (g.seed) patch["seed"] = *g.seed;
  if (g.deterministic) patch["deterministic"] = true;
  if (!g.out.empty()) patch["output_dir"] = g.out;
  LibString resolved;
  check(edgelab_config_resolve(g.config.empty() ? nullptr : g.config.c_str(),
                               patch.dump().c_str(), resolved.out()),
        "config");
  return json::parse(resolved.str());
}

double ms(std::int64_t ns) { return static_cast<double>(ns) / 1e6; }

void print_load(const json& r) {
  std::printf("%s%s  %d connections, %.3f s\n", r.at("target").get<std::string>().c_str(),
              r.at("path").get<std::string>().c_str(), r.at("connections").get<int>(),
              ms(r.at("elapsed_ns").get<std::int64_t>()) / 1e3);
  std::printf("  responses %llu  errors %llu  %.1f req/s  %.1f bytes/s\n",
              static_cast<unsigned long long>(r.at("total_responses").get<std::uint64_t>()),
              static_cast<unsigned long long>(r.at("error_count").get<std::uint64_t>()),
              r.at("requests_per_second").get<double>(), r.at("bytes_per_second").get<double>());
  for (const auto& pv : r.at("percentiles")) {
    std::printf("  p%-6g %10.3f ms\n", pv.at("percentile").get<double>(),
                ms(pv.at("value_ns").get<std::int64_t>()));
  }
}

void print_audit(const json& r) {
  std::printf("%s%s  %d runs, reset %s, profile %s\n", r.at("target").get<std::string>().c_str(),
              r.at("path").get<std::string>().c_str(), r.at("runs").get<int>(),
              r.at("reset").get<std::string>().c_str(),
              r.at("profile").at("name").get<std::string>().c_str());
  const auto& st = r.at("server_times_ns");
  const auto& fcp = r.at("fcps_ns");
  const auto& cache = r.at("statuses");
  for (std::size_t i = 0; i < st.size(); ++i) {
    std::printf("  run %zu  server %9.3f ms  fcp %9.3f ms  %s\n", i + 1,
                ms(st[i].get<std::int64_t>()), ms(fcp[i].get<std::int64_t>()),
                cache[i].get<std::string>().c_str());
  }
}

void write_json_file(const std::string& file, const std::string& text) {
  std::ofstream os(file, std::ios::trunc);
  os << text << "\n";
  if (!os) {
    std::cerr << "edgelab: cannot write " << file << "\n";
    throw Exit{kExitIo};
  }
}

void cmd_build(const GlobalFlags& g) {
  const json cfg = resolve_config(g, nullptr);
  const std::string out = cfg.at("output_dir").get<std::string>();
  LibString result;
  check(edgelab_build(cfg.dump().c_str(), out.c_str(), &log_line, nullptr, result.out()), "build");
  const json r = json::parse(result.str());
  std::printf("deploy %lld  pages %zu  rebuilt %zu  written %zu  removed %zu%s\n",
              static_cast<long long>(r.at("deploy_id").get<std::int64_t>()),
              r.at("pages").get<std::size_t>(), r.at("rebuilt_paths").size(),
              r.at("written").size(), r.at("removed").size(),
              r.at("incremental").get<bool>() ? "  (incremental)" : "");
  std::printf("source %s\n", r.at("source_digest").get<std::string>().c_str());
  std::printf("site   %s/site\n", out.c_str());
}

void cmd_serve(const GlobalFlags& g, std::optional<int> port, std::optional<int> content_port) {
  json extra = json::object();
  if (port) extra["base_port"] = *port;
  if (content_port) extra["content_port"] = *content_port;
  json cfg = resolve_config(g, extra);

  // Block the shutdown signals before any server thread exists so that only
  // sigwait below sees them.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  edgelab_server* server = nullptr;
  check(edgelab_serve_start(cfg.dump().c_str(), &server), "serve");
  LibString ports;
  const edgelab_status s = edgelab_server_port_map(server, ports.out());
  if (s != EDGELAB_OK) {
    edgelab_server_free(server);
    check(s, "serve");
  }
  const auto map = nlohmann::ordered_json::parse(ports.str());
  const std::string host = cfg.at("host").get<std::string>();
  for (const auto& [name, p] : map.items()) {
    std::printf("%-10s http://%s:%d\n", name.c_str(), host.c_str(), p.get<int>());
  }
  std::fflush(stdout);

  int sig = 0;
  sigwait(&signals, &sig);
  std::cerr << "edgelab: shutting down\n";
  edgelab_server_free(server);
}

void cmd_bench(const std::string& url, const std::string& path, double duration, int connections,
               int warmup, const std::string& out_file) {
  LibString report;
  check(edgelab_bench_run(url.c_str(), path.c_str(), duration, connections, warmup, report.out()),
        "bench");
  print_load(json::parse(report.str()));
  if (!out_file.empty()) write_json_file(out_file, report.str());
}

void cmd_audit(const std::string& url, const std::string& path, const std::string& profile,
               double render_overhead_ms, int runs, const std::string& reset,
               const std::string& out_file) {
  LibString report;
  check(edgelab_audit_run(url.c_str(), path.c_str(), profile.c_str(),
                          static_cast<std::int64_t>(render_overhead_ms * 1e6), runs, reset.c_str(),
                          report.out()),
        "audit");
  print_audit(json::parse(report.str()));
  if (!out_file.empty()) write_json_file(out_file, report.str());
}

void cmd_experiment(const GlobalFlags& g, std::optional<double> duration, std::optional<int> runs,
                    std::optional<int> connections, std::optional<std::string> transport) {
  json extra = json::object();
  if (duration) extra["bench"]["duration_s"] = *duration;
  if (connections) extra["bench"]["connections"] = *connections;
  if (runs) extra["audit"]["runs"] = *runs;
  if (transport) extra["transport"] = *transport;
  const json cfg = resolve_config(g, extra);
  const std::string out = cfg.at("output_dir").get<std::string>();
  check(edgelab_experiment_run(cfg.dump().c_str(), out.c_str(), &log_line, nullptr, nullptr),
        "experiment");
  std::ifstream audit(out + "/audit.md");
  std::cout << audit.rdbuf();
  std::cerr << "edgelab: results in " << out << "\n";
}

void cmd_report(const GlobalFlags& g, const std::string& summary) {
  std::string out = g.out;
  if (out.empty()) out = resolve_config(g, nullptr).at("output_dir").get<std::string>();
  const std::string file = summary.empty() ? out + "/summary.json" : summary;
  LibString files;
  check(edgelab_report(file.c_str(), out.c_str(), files.out()), "report");
  for (const auto& f : json::parse(files.str())) std::cout << f.get<std::string>() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"edgelab: static, server-rendered and cached page delivery on a simulated edge"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(edgelab_version()));

  GlobalFlags g;
  auto add_globals = [&g](CLI::App* sub) {
    sub->add_option("--config", g.config, "JSON config file")->check(CLI::ExistingFile);
    sub->add_option("--seed", g.seed, "Content seed");
    sub->add_flag("--deterministic", g.deterministic, "Virtual clock, reproducible output");
    sub->add_option("--out", g.out, "Output directory");
  };

  auto* build = app.add_subcommand("build", "Generate posts and export the static site");
  add_globals(build);

  auto* serve = app.add_subcommand("serve", "Serve every variant over HTTP until interrupted");
  add_globals(serve);
  std::optional<int> port;
  std::optional<int> content_port;
  serve->add_option("--port", port, "First variant port (0: ephemeral)")->check(CLI::Range(0, 65535));
  serve->add_option("--content-port", content_port, "Content server port")
      ->check(CLI::Range(0, 65535));

  auto* bench = app.add_subcommand("bench", "Closed-loop load test against a URL");
  std::string url;
  std::string path = "/";
  double duration = 30;
  int connections = 10;
  int warmup = 0;
  std::string report_out;
  bench->add_option("--url", url, "Base URL, e.g. http://127.0.0.1:8080")->required();
  bench->add_option("--path", path, "Request path");
  bench->add_option("--duration", duration, "Seconds")->check(CLI::PositiveNumber);
  bench->add_option("--connections", connections, "Concurrent connections")
      ->check(CLI::Range(1, 4096));
  bench->add_option("--warmup", warmup, "Requests sent before timing")->check(CLI::NonNegativeNumber);
  bench->add_option("--json", report_out, "Write the report as JSON");

  auto* audit = app.add_subcommand("audit", "Sequential first-paint audit against a URL");
  std::string profile = "mobile-throttled";
  double render_overhead_ms = 0;
  int audit_runs = 5;
  std::string reset = "purge+cold";
  audit->add_option("--url", url, "Base URL")->required();
  audit->add_option("--path", path, "Request path");
  audit->add_option("--profile", profile, "Throttle profile: mobile-throttled or none");
  audit->add_option("--render-overhead-ms", render_overhead_ms, "Client render cost")
      ->check(CLI::NonNegativeNumber);
  audit->add_option("--runs", audit_runs, "Runs per audit")->check(CLI::Range(2, 1000));
  audit->add_option("--reset", reset, "none, purge, cold or purge+cold");
  audit->add_option("--json", report_out, "Write the report as JSON");

  auto* experiment = app.add_subcommand("experiment", "Audit and load-test every variant");
  add_globals(experiment);
  std::optional<double> exp_duration;
  std::optional<int> exp_runs;
  std::optional<int> exp_connections;
  std::optional<std::string> transport;
  experiment->add_option("--duration", exp_duration, "Load test seconds per variant")
      ->check(CLI::PositiveNumber);
  experiment->add_option("--runs", exp_runs, "Audit runs")->check(CLI::Range(2, 1000));
  experiment->add_option("--connections", exp_connections, "Load test connections")
      ->check(CLI::Range(1, 4096));
  experiment->add_option("--transport", transport, "http or in-process")
      ->check(CLI::IsMember({"http", "in-process"}));

  auto* report = app.add_subcommand("report", "Rebuild the tables from summary.json");
  add_globals(report);
  std::string summary;
  report->add_option("--summary", summary, "summary.json (default: <out>/summary.json)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*build) cmd_build(g);
    if (*serve) cmd_serve(g, port, content_port);
    if (*bench) cmd_bench(url, path, duration, connections, warmup, report_out);
    if (*audit) cmd_audit(url, path, profile, render_overhead_ms, audit_runs, reset, report_out);
    if (*experiment) cmd_experiment(g, exp_duration, exp_runs, exp_connections, transport);
    if (*report) cmd_report(g, summary);
  } catch (const Exit& e) {
    return e.code;
  } catch (const json::exception& e) {
    std::cerr << "edgelab: unexpected library output: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitOk;
}
