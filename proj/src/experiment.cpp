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

#include "edgelab/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "edgelab/bench.hpp"
#include "edgelab/error.hpp"
#include "edgelab/report.hpp"

namespace edgelab {
namespace fs = std::filesystem;
namespace {

using nlohmann::json;

void say(const LogFn& log, const std::string& msg) {
  if (log) log(msg);
}

std::string read_file(const fs::path& file) {
  std::ifstream is(file, std::ios::binary);
  if (!is) throw Error(ErrorCode::kIo, "cannot read " + file.string());
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

void write_file(const fs::path& file, std::string_view data) {
  std::error_code ec;
  if (file.has_parent_path()) fs::create_directories(file.parent_path(), ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + file.parent_path().string());
  std::ofstream os(file, std::ios::binary | std::ios::trunc);
  os.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!os) throw Error(ErrorCode::kIo, "cannot write " + file.string());
}

Digest digest_field(const json& j, const char* key) {
  const auto d = Digest::from_hex(j.at(key).get<std::string>());
  if (!d) throw Error(ErrorCode::kIo, std::string("manifest: bad digest in ") + key);
  return *d;
}

json manifest_json(const ExperimentConfig& cfg, const BuildResult& r) {
  const SiteBuild& b = r.build;
  json pages = json::array();
  for (const auto& [path, page] : b.pages) {
    pages.push_back({{"path", path},
                     {"file", (fs::path(kSiteDir) / export_relpath(path)).generic_string()},
                     {"sha256", page->content_hash.hex()},
                     {"bytes", page->body.size()}});
  }
  json post_digests = json::object();
  for (const auto& [path, d] : b.post_digests) post_digests[path] = d.hex();
  return {{"tool", "edgelab"},
          {"version", tool_version()},
          {"seed", cfg.seed.value},
          {"post_count", cfg.post_count},
          {"config_digest", config_digest(cfg).hex()},
          {"deploy_id", b.deploy_id},
          {"built_at_ns", b.built_at},
          {"source_digest", b.source_digest.hex()},
          {"link_digest", b.link_digest.hex()},
          {"post_digests", post_digests},
          {"incremental", r.incremental},
          {"rebuilt_paths", r.rebuilt_paths},
          {"pages", pages}};
}

// Files under dir, relative and in generic form.
std::set<std::string> list_files(const fs::path& dir) {
  std::set<std::string> out;
  std::error_code ec;
  if (!fs::exists(dir, ec)) return out;
  for (auto it = fs::recursive_directory_iterator(dir, ec); !ec && it != fs::end(it);
       it.increment(ec)) {
    if (it->is_regular_file()) out.insert(fs::relative(it->path(), dir).generic_string());
  }
  return out;
}

void remove_empty_dirs(const fs::path& dir) {
  std::error_code ec;
  std::vector<fs::path> dirs;
  for (auto it = fs::recursive_directory_iterator(dir, ec); !ec && it != fs::end(it);
       it.increment(ec)) {
    if (it->is_directory()) dirs.push_back(it->path());
  }
  // Deepest first.
  std::sort(dirs.begin(), dirs.end(), [](const fs::path& a, const fs::path& b) {
    return a.native().size() > b.native().size();
  });
  for (const auto& d : dirs) {
    if (fs::is_empty(d, ec)) fs::remove(d, ec);
  }
}

std::vector<std::string> provenance(const json& summary) {
  return {"tool=edgelab",
          "version=" + summary.at("version").get<std::string>(),
          "seed=" + std::to_string(summary.at("seed").get<std::uint64_t>()),
          "config_digest=" + summary.at("config_digest").get<std::string>(),
          "clock=" + summary.at("clock").get<std::string>(),
          "transport=" + summary.at("transport").get<std::string>(),
          "profile=" + summary.at("profile").at("name").get<std::string>(),
          "render_overhead_ms=" +
              format_ms(Duration(summary.at("profile").at("render_overhead_ns").get<std::int64_t>()))};
}

json profile_json(const ThrottleProfile& p) {
  return {{"name", p.name},
          {"downlink_bps", std::isinf(p.downlink_bps) ? json(nullptr) : json(p.downlink_bps)},
          {"uplink_bps", std::isinf(p.uplink_bps) ? json(nullptr) : json(p.uplink_bps)},
          {"rtt_ns", p.rtt.count()},
          {"render_overhead_ns", p.render_overhead.count()}};
}

}  // namespace

std::string tool_version() { return EDGELAB_VERSION; }

std::optional<SiteBuild> load_export(const fs::path& out_dir) {
  const fs::path manifest_file = out_dir / std::string(kManifestFile);
  std::error_code ec;
  if (!fs::exists(manifest_file, ec)) return std::nullopt;
  json m;
  try {
    m = json::parse(read_file(manifest_file));
    SiteBuild b;
    b.deploy_id = m.at("deploy_id").get<std::int64_t>();
    b.built_at = m.at("built_at_ns").get<std::int64_t>();
    b.source_digest = digest_field(m, "source_digest");
    b.link_digest = digest_field(m, "link_digest");
    for (const auto& [path, d] : m.at("post_digests").items()) {
      const auto parsed = Digest::from_hex(d.get<std::string>());
      if (!parsed) throw Error(ErrorCode::kIo, "manifest: bad post digest");
      b.post_digests.emplace(path, *parsed);
    }
    for (const auto& p : m.at("pages")) {
      const auto path = p.at("path").get<std::string>();
      const fs::path file = out_dir / p.at("file").get<std::string>();
      auto page = std::make_shared<const RenderedPage>(make_page(path, read_file(file)));
      if (page->content_hash.hex() != p.at("sha256").get<std::string>()) {
        throw Error(ErrorCode::kIo, file.string() + " does not match the manifest");
      }
      b.pages.emplace(path, std::move(page));
    }
    return b;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kIo, manifest_file.string() + ": " + e.what());
  }
}

BuildResult run_build(const ExperimentConfig& cfg, const fs::path& out_dir, const LogFn& log) {
  cfg.validate();
  const PostList posts = generate_posts(cfg.seed, cfg.post_count, cfg.words);
  const std::int64_t built_at =
      cfg.deterministic ? 0 : elapsed_since_epoch(std::chrono::steady_clock::now()).count();

  std::optional<SiteBuild> prev;
  try {
    prev = load_export(out_dir);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kIo) throw;
    say(log, std::string("previous export unusable, doing a full build: ") + e.what());
  }

  BuildResult result;
  if (prev) {
    IncrementalBuild inc = incremental_rebuild(*prev, posts, built_at);
    result.build = std::move(inc.build);
    result.rebuilt_paths = std::move(inc.rebuilt_paths);
    result.incremental = true;
  } else {
    result.build = build_site(posts, 0, built_at);
    for (const auto& [path, page] : result.build.pages) result.rebuilt_paths.insert(path);
  }

  const fs::path site = out_dir / std::string(kSiteDir);
  const std::set<std::string> existing = list_files(site);
  std::set<std::string> expected;
  for (const auto& [path, page] : result.build.pages) {
    const std::string rel = export_relpath(path).generic_string();
    expected.insert(rel);
    if (result.rebuilt_paths.contains(path) || !existing.contains(rel)) {
      write_file(site / rel, page->body);
      result.written.push_back((fs::path(kSiteDir) / rel).generic_string());
    }
  }
  for (const auto& rel : existing) {
    if (expected.contains(rel)) continue;
    std::error_code ec;
    fs::remove(site / rel, ec);
    if (ec) throw Error(ErrorCode::kIo, "cannot remove " + (site / rel).string());
    result.removed.push_back((fs::path(kSiteDir) / rel).generic_string());
  }
  remove_empty_dirs(site);

  write_file(out_dir / std::string(kManifestFile), manifest_json(cfg, result).dump(2) + "\n");
  say(log, "deploy " + std::to_string(result.build.deploy_id) + ": " +
               std::to_string(result.build.pages.size()) + " pages, " +
               std::to_string(result.rebuilt_paths.size()) + " rebuilt, " +
               std::to_string(result.written.size()) + " written, " +
               std::to_string(result.removed.size()) + " removed");
  return result;
}

Lab::Lab(const ExperimentConfig& cfg) : cfg_(cfg) {
  cfg_.validate();
  auto build = std::make_shared<SiteBuild>(
      build_site(generate_posts(cfg_.seed, cfg_.post_count, cfg_.words), 0));
  posts_ = build->source;
  build_ = build;
  Executor* background = nullptr;
  if (cfg_.deterministic) {
    vclock_ = std::make_unique<VirtualClock>();
    scheduler_ = std::make_unique<sim::Scheduler>(*vclock_, sim::Scheduler::TieBreak::kFifo,
                                                  cfg_.seed.value);
    background = scheduler_.get();
  }
  for (const auto& v : cfg_.variants) {
    auto w = std::make_shared<EdgeWorker>(v.strategy, background);
    w->deploy(build_, std::make_shared<PostStore>(posts_, v.strategy.upstream_delay));
    workers_.push_back(std::move(w));
  }
}

Lab::~Lab() {
  try {
    settle();
  } catch (...) {
  }
}

Clock& Lab::clock() {
  if (vclock_) return *vclock_;
  return SystemClock::instance();
}

void Lab::settle() {
  if (scheduler_) scheduler_->run();
  for (auto& w : workers_) w->drain_background();
}

std::unique_ptr<EdgeServer> Lab::make_server() const {
  auto server = std::make_unique<EdgeServer>(cfg_.host);
  for (std::size_t i = 0; i < workers_.size(); ++i) {
    server->add_variant(cfg_.variants[i].name, workers_[i], cfg_.port_for(i));
  }
  if (cfg_.content_port != 0) {
    server->add_content(posts_, cfg_.variants.front().strategy.upstream_delay, cfg_.content_port);
  }
  return server;
}

json run_experiment(const ExperimentConfig& cfg, const LogFn& log) {
  cfg.validate();
  Lab lab(cfg);
  const ThrottleProfile profile = cfg.profile();
  const bool http = !cfg.deterministic && cfg.transport == Transport::kHttp;

  std::unique_ptr<EdgeServer> server;
  std::vector<std::unique_ptr<Target>> targets;
  if (http) {
    server = lab.make_server();
    server->start();
    for (const auto& v : cfg.variants) targets.push_back(make_http_target(server->url_for(v.name)));
  } else {
    for (std::size_t i = 0; i < lab.size(); ++i) {
      targets.push_back(std::make_unique<WorkerTarget>(*lab.worker(i)));
    }
  }

  json audits = json::array();
  json loads = json::array();
  for (std::size_t i = 0; i < cfg.variants.size(); ++i) {
    const auto& v = cfg.variants[i];
    Target& target = *targets[i];
    for (const auto& page : cfg.audit.pages) {
      say(log, "audit " + v.name + " " + page);
      const AuditReport a = run_audit(target, page, profile, cfg.audit.runs, cfg.audit.reset,
                                      lab.clock());
      lab.settle();
      audits.push_back({{"variant", v.name}, {"page", page_label(page)}, {"report", to_json(a)}});
    }
    say(log, "load " + v.name + " " + cfg.bench.load.target_path);
    apply_reset(target, cfg.bench.reset);
    const BenchReport b = run_load(target, cfg.bench.load, lab.clock());
    lab.settle();
    loads.push_back({{"variant", v.name}, {"report", to_json(b)}});
  }
  if (server) server->stop();

  json config = config_to_json(cfg);
  config.erase("output_dir");
  json notes = json::array();
  notes.push_back("p100 is a single sample and is never used for comparisons");
  if (http) notes.push_back("server_time over http is measured by the client, loopback included");
  if (cfg.bench.load.connections == BenchConfig{}.connections) {
    notes.push_back("connections left at the default of 10");
  }
  return {{"tool", "edgelab"},
          {"version", tool_version()},
          {"seed", cfg.seed.value},
          {"config_digest", config_digest(cfg).hex()},
          {"deterministic", cfg.deterministic},
          {"clock", cfg.deterministic ? "virtual" : "system"},
          {"transport", http ? "http" : "in-process"},
          {"profile", profile_json(profile)},
          {"site",
           {{"deploy_id", lab.build()->deploy_id},
            {"pages", lab.build()->pages.size()},
            {"source_digest", lab.build()->source_digest.hex()}}},
          {"config", config},
          {"audits", audits},
          {"loads", loads},
          {"notes", notes}};
}

std::vector<fs::path> write_outputs(const json& summary, const fs::path& out_dir) {
  std::vector<fs::path> files;
  const fs::path summary_file = out_dir / "summary.json";
  write_file(summary_file, summary.dump(2) + "\n");
  files.push_back(summary_file);

  std::vector<NamedReport> audits;
  std::vector<NamedReport> loads;
  try {
    for (const auto& a : summary.at("audits")) {
      audits.push_back({a.at("variant").get<std::string>(), a.at("page").get<std::string>(),
                        audit_report_from_json(a.at("report"))});
    }
    for (const auto& l : summary.at("loads")) {
      loads.push_back({l.at("variant").get<std::string>(), "", bench_report_from_json(l.at("report"))});
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kIo, std::string("summary: ") + e.what());
  } catch (const Error& e) {
    throw Error(ErrorCode::kIo, std::string("summary: ") + e.what());
  }
  std::vector<std::string> prov;
  std::vector<std::string> load_prov;
  try {
    prov = provenance(summary);
    load_prov = prov;
    load_prov.push_back(
        "connections=" +
        std::to_string(summary.at("config").at("bench").at("connections").get<int>()));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kIo, std::string("summary: ") + e.what());
  }
  auto emit = [&](const std::vector<NamedReport>& reports, const std::string& stem,
                  const std::vector<std::string>& notes) {
    if (reports.empty()) return;
    ComparisonTable t = compare(reports);
    t.provenance = notes;
    write_file(out_dir / (stem + ".md"), t.to_markdown());
    write_file(out_dir / (stem + ".csv"), t.to_csv());
    files.push_back(out_dir / (stem + ".md"));
    files.push_back(out_dir / (stem + ".csv"));
  };
  emit(audits, "audit", prov);
  emit(loads, "percentiles", load_prov);
  return files;
}

std::vector<fs::path> write_report(const fs::path& summary_file, const fs::path& out_dir) {
  json summary;
  try {
    summary = json::parse(read_file(summary_file));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kIo, summary_file.string() + ": " + e.what());
  }
  return write_outputs(summary, out_dir);
}

}  // namespace edgelab
