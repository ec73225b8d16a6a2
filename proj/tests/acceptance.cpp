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

// End-to-end checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any failed.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "edgelab/bench.hpp"
#include "edgelab/config.hpp"
#include "edgelab/content.hpp"
#include "edgelab/edge.hpp"
#include "edgelab/error.hpp"
#include "edgelab/experiment.hpp"
#include "edgelab/histogram.hpp"
#include "edgelab/http.hpp"
#include "edgelab/netmodel.hpp"
#include "edgelab/report.hpp"
#include "edgelab/sim.hpp"
#include "edgelab/ssg.hpp"

namespace fs = std::filesystem;
using namespace edgelab;  // NOLINT
using std::chrono::milliseconds;
using std::chrono::seconds;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void check(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

std::string ms(Duration d) { return format_ms(d) + " ms"; }

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(is), {}};
}

VariantConfig variant(std::string name, Strategy s) {
  VariantConfig v;
  v.name = std::move(name);
  v.strategy.strategy = s;
  return v;
}

// Wall-clock experiment over loopback HTTP; returns the load report of
// every variant by name.
std::map<std::string, BenchReport> http_loads(std::vector<VariantConfig> variants,
                                              Duration duration) {
  ExperimentConfig cfg = ExperimentConfig::default_preset();
  cfg.variants = std::move(variants);
  cfg.base_port = 0;
  cfg.deterministic = false;
  cfg.transport = Transport::kHttp;
  cfg.bench.load.duration = duration;
  cfg.bench.load.warmup_requests = 1;
  cfg.bench.reset = ResetPolicy::kPurge;
  const nlohmann::json summary = run_experiment(cfg);
  std::map<std::string, BenchReport> out;
  for (const auto& l : summary.at("loads")) {
    out[l.at("variant").get<std::string>()] = bench_report_from_json(l.at("report"));
  }
  return out;
}

std::unique_ptr<EdgeWorker> deployed_worker(const StrategyConfig& cfg, Executor* bg = nullptr) {
  auto w = std::make_unique<EdgeWorker>(cfg, bg);
  w->deploy(std::make_shared<const SiteBuild>(build_site(generate_posts(Seed{42}, 100), 0)));
  return w;
}

Outcome c1_ssr_vs_cached() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  auto loads = http_loads({variant("ssr", Strategy::kSsr), variant("isr", Strategy::kIsr)},
                          seconds(10));
  const double runtime =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const Duration delta = loads.at("ssr").at(50) - loads.at("isr").at(50);
  o.detail = "p50 ssr " + ms(loads.at("ssr").at(50)) + ", isr " + ms(loads.at("isr").at(50)) +
             ", delta " + ms(delta) + ", runtime " + std::to_string(runtime).substr(0, 5) + " s";
  const std::string d = o.detail;
  o.check(delta >= milliseconds(90) && delta <= milliseconds(160), "delta out of [90,160] ms: " + d);
  o.check(runtime < 60, "runtime over 1 min: " + d);
  return o;
}

Outcome c2_isr_absorption() {
  Outcome o;
  std::vector<Duration> first_pass;
  for (int pass = 0; pass < 2; ++pass) {
    VirtualClock clock;
    StrategyConfig cfg;
    cfg.strategy = Strategy::kIsr;
    auto w = deployed_worker(cfg);
    WorkerTarget target(*w);
    std::vector<Duration> seen;
    for (const char* path : {"/", "/posts/post-0"}) {
      const AuditReport a = run_audit(target, path, ThrottleProfile::mobile_throttled(), 5,
                                      ResetPolicy::kPurge, clock);
      o.check(a.server_time.run_1 >= milliseconds(100),
              std::string(path) + " run 1 " + ms(a.server_time.run_1));
      o.check(a.server_time.rest_median <= milliseconds(20),
              std::string(path) + " median " + ms(a.server_time.rest_median));
      std::vector<CacheStatus> want(5, CacheStatus::kHit);
      want[0] = CacheStatus::kMiss;
      o.check(a.statuses == want, std::string(path) + ": status sequence is not MISS,HIT x4");
      seen.insert(seen.end(), a.server_times.begin(), a.server_times.end());
      if (o.ok && pass == 0 && std::string(path) == "/") {
        o.detail = "index run1 " + ms(a.server_time.run_1) + ", median(2-5) " +
                   ms(a.server_time.rest_median);
      }
    }
    if (pass == 0) {
      first_pass = seen;
    } else {
      o.check(seen == first_pass, "virtual-clock audit not reproducible");
    }
  }
  return o;
}

Outcome c3_cold_start() {
  Outcome o;
  std::string detail;
  for (const Duration penalty : {Duration(milliseconds(100)), Duration::zero()}) {
    VirtualClock clock;
    StrategyConfig cfg;
    cfg.strategy = Strategy::kStatic;
    cfg.cold_start_penalty = penalty;
    auto w = deployed_worker(cfg);
    WorkerTarget target(*w);
    const AuditReport a = run_audit(target, "/", ThrottleProfile::mobile_throttled(), 5,
                                    ResetPolicy::kPurgeAndCold, clock);
    const Duration diff = a.server_time.run_1 - a.server_time.rest_median;
    detail += "penalty " + ms(penalty) + ": run1-median " + ms(diff) + "; ";
    if (penalty > Duration::zero()) {
      o.check(std::chrono::abs(diff - milliseconds(100)) <= milliseconds(15), detail);
    } else {
      o.check(std::chrono::abs(diff) <= milliseconds(10), detail);
    }
  }
  if (o.ok) o.detail = detail;
  return o;
}

BenchReport c4_isr;
BenchReport c4_static;
bool c4_ran = false;

// Loads both variants over HTTP during the same wall-clock window so that
// host noise lands on both equally.
std::map<std::string, BenchReport> paired_http_loads(std::vector<VariantConfig> variants,
                                                     Duration duration) {
  ExperimentConfig cfg = ExperimentConfig::default_preset();
  cfg.variants = std::move(variants);
  cfg.base_port = 0;
  cfg.bench.load.duration = duration;
  cfg.bench.load.warmup_requests = 1;
  Lab lab(cfg);
  auto server = lab.make_server();
  server->start();
  std::vector<std::unique_ptr<Target>> targets;
  for (const auto& v : cfg.variants) {
    targets.push_back(make_http_target(server->url_for(v.name)));
    apply_reset(*targets.back(), ResetPolicy::kPurge);
  }
  std::vector<BenchReport> reports(targets.size());
  std::vector<std::exception_ptr> errors(targets.size());
  std::vector<std::thread> threads;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    threads.emplace_back([&, i] {
      try {
        reports[i] = run_load(*targets[i], cfg.bench.load, SystemClock::instance());
      } catch (...) {
        errors[i] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  server->stop();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::map<std::string, BenchReport> out;
  for (std::size_t i = 0; i < targets.size(); ++i) out[cfg.variants[i].name] = reports[i];
  return out;
}

Outcome c4_isr_follows_static() {
  Outcome o;
  auto loads = paired_http_loads(
      {variant("isr", Strategy::kIsr), variant("ssg", Strategy::kStatic)}, seconds(30));
  c4_isr = loads.at("isr");
  c4_static = loads.at("ssg");
  c4_ran = true;
  const double gap = max_relative_gap(c4_isr, c4_static, 50, 99);
  std::ostringstream d;
  d << "max gap p50-p99 " << gap * 100 << "% (";
  for (const double p : {50.0, 75.0, 90.0, 97.5, 99.0}) {
    d << "p" << p << " " << format_ms(c4_isr.at(p)) << "/" << format_ms(c4_static.at(p)) << " ";
  }
  d << "ms)";
  o.detail = d.str();
  o.check(gap <= 0.10, o.detail);
  o.check(c4_isr.error_count == 0 && c4_static.error_count == 0, "load run saw errors");
  return o;
}

Outcome c5_dpr_atomicity() {
  Outcome o;
  const PostList v1 = generate_posts(Seed{5}, 4, WordRange{10, 20});
  PostList v2 = v1;
  for (auto& p : v2) p.title += " v2";
  auto b1 = std::make_shared<const SiteBuild>(build_site(v1, 0));
  auto b2 = std::make_shared<const SiteBuild>(build_site(v2, 1));
  const std::vector<std::string> paths = {"/", "/posts/post-0", "/posts/post-1", "/posts/post-3"};
  std::uint64_t observed = 0;
  std::uint64_t after = 0;
  constexpr int kTrials = 10000;
  for (int trial = 0; trial < kTrials && o.ok; ++trial) {
    std::mt19937_64 gen(static_cast<std::uint64_t>(trial));
    VirtualClock clock;
    sim::Scheduler sched(clock, sim::Scheduler::TieBreak::kRandom, static_cast<std::uint64_t>(trial));
    StrategyConfig cfg;
    cfg.strategy = Strategy::kDpr;
    cfg.kv_read_delay = milliseconds(gen() % 3);
    EdgeWorker w(cfg, &sched);
    w.deploy(b1);
    bool deployed = false;
    struct Seen {
      bool after_deploy;
      std::string path;
      Response r;
    };
    std::vector<Seen> seen;
    const auto at = [&](std::uint64_t bound) {
      return clock.now() + milliseconds(static_cast<std::int64_t>(gen() % bound));
    };
    sched.spawn_at(at(250), [&] {
      w.deploy(b2);
      deployed = true;
    });
    const int requests = 6 + static_cast<int>(gen() % 6);
    for (int i = 0; i < requests; ++i) {
      const std::string path = paths[gen() % paths.size()];
      sched.spawn_at(at(400), [&, path] {
        const bool after_deploy = deployed;
        Response r = w.handle_request(path, clock);
        seen.push_back({after_deploy, path, std::move(r)});
      });
    }
    sched.run();
    for (const auto& s : seen) {
      ++observed;
      const SiteBuild& b = s.r.deploy_id == 2 ? *b2 : *b1;
      const RenderedPage* page = b.find(s.path);
      const bool valid = (s.r.deploy_id == 1 || s.r.deploy_id == 2) && s.r.status == 200 &&
                         page != nullptr && s.r.body_view() == page->body;
      o.check(valid, "trial " + std::to_string(trial) + ": " + s.path +
                         " body does not match deploy " + std::to_string(s.r.deploy_id));
      if (s.after_deploy) {
        ++after;
        o.check(s.r.deploy_id == 2, "trial " + std::to_string(trial) + ": " + s.path +
                                        " served deploy 1 after the swap");
      }
    }
    for (const auto& path : paths) {
      const Response r = w.handle_request(path, clock);
      o.check(r.deploy_id == 2 && r.body_view() == b2->find(path)->body,
              "trial " + std::to_string(trial) + ": stale entry after the run");
    }
  }
  if (o.ok) {
    o.detail = std::to_string(kTrials) + " trials, " + std::to_string(observed) +
               " responses, " + std::to_string(after) + " after the swap";
  }
  return o;
}

// Serves posts whose bodies change once bumped.
class ChangingSource final : public ContentSource {
 public:
  ChangingSource() : posts_(generate_posts(Seed{42}, 3, WordRange{20, 40})) {}
  std::shared_ptr<const PostList> fetch_posts(Clock& clock) override {
    clock.sleep_for(milliseconds(100));
    return std::make_shared<const PostList>(snapshot());
  }
  Post fetch_post(std::int64_t id, Clock& clock) override {
    clock.sleep_for(milliseconds(100));
    return snapshot().at(static_cast<std::size_t>(id));
  }
  PostList snapshot() const {
    PostList out = posts_;
    if (changed) {
      for (auto& p : out) p.body += " revised";
    }
    return out;
  }
  bool changed = false;

 private:
  PostList posts_;
};

Outcome c6_swr_contract() {
  Outcome o;
  VirtualClock clock;
  sim::Scheduler sched(clock);
  StrategyConfig cfg;
  cfg.strategy = Strategy::kSwr;
  cfg.ttl = seconds(1);
  EdgeWorker w(cfg, &sched);
  auto source = std::make_shared<ChangingSource>();
  w.deploy(std::make_shared<const SiteBuild>(build_site(source->snapshot(), 0)), source);
  const std::string path = "/posts/post-1";

  const Response first = w.handle_request(path, clock);
  o.check(first.cache_status == CacheStatus::kMiss, "first request not a MISS");
  const std::string old_body(first.body_view());
  source->changed = true;

  std::vector<Response> stale(100);
  const TimePoint t2 = TimePoint(seconds(2));
  for (std::size_t i = 0; i < stale.size(); ++i) {
    sched.spawn_at(t2, [&, i] { stale[i] = w.handle_request(path, clock); });
  }
  sched.run();
  Duration worst{};
  for (const auto& r : stale) {
    o.check(r.cache_status == CacheStatus::kStale, "concurrent request not STALE");
    o.check(r.body_view() == old_body, "STALE response did not carry the old bytes");
    worst = std::max(worst, r.server_time);
  }
  o.check(worst <= milliseconds(10), "stale server_time " + ms(worst));
  const WorkerStats st = w.stats();
  o.check(st.revalidations_scheduled == 1 && st.revalidations_completed == 1,
          "revalidations scheduled " + std::to_string(st.revalidations_scheduled) +
              ", completed " + std::to_string(st.revalidations_completed));

  const Response next = w.handle_request(path, clock);
  const std::string fresh = render_post(source->snapshot()[1]).body;
  o.check(next.cache_status == CacheStatus::kHit, "request after revalidation not a HIT");
  o.check(next.body_view() == fresh && fresh != old_body, "request after revalidation not fresh");
  if (o.ok) {
    o.detail = "100 STALE at t=2 s, max server_time " + ms(worst) +
               ", 1 revalidation, then HIT with fresh bytes";
  }
  return o;
}

Outcome c7_incremental_oracle() {
  Outcome o;
  std::mt19937_64 gen(7);
  const WordRange words{10, 60};
  PostList posts = generate_posts(Seed{77}, 30, words);
  SiteBuild prev = build_site(posts, 0);
  std::int64_t next_id = 30;
  int next_slug = 0;
  constexpr int kMutations = 500;
  std::map<std::string, int> kinds;
  for (int i = 0; i < kMutations && o.ok; ++i) {
    const std::size_t k = static_cast<std::size_t>(gen() % posts.size());
    std::set<std::string> expected;
    std::string kind;
    switch (gen() % 5) {
      case 0:
        kind = "body";
        posts[k].body += " edit" + std::to_string(i);
        expected = {post_path(posts[k].slug)};
        break;
      case 1:
        kind = "title";
        posts[k].title += " T" + std::to_string(i);
        expected = {"/", post_path(posts[k].slug)};
        break;
      case 2:
        kind = "slug";
        posts[k].slug = "renamed-" + std::to_string(next_slug++);
        expected = {"/", post_path(posts[k].slug)};
        break;
      case 3:
        kind = "add";
        posts.push_back(generate_post(Seed{77}, next_id++, words));
        expected = {"/", post_path(posts.back().slug)};
        break;
      default:
        kind = "remove";
        if (posts.size() <= 2) {
          posts.push_back(generate_post(Seed{77}, next_id++, words));
          kind = "add";
          expected = {"/", post_path(posts.back().slug)};
          break;
        }
        posts.erase(posts.begin() + static_cast<std::ptrdiff_t>(k));
        expected = {"/"};
        break;
    }
    ++kinds[kind];
    const IncrementalBuild inc = incremental_rebuild(prev, posts);
    const SiteBuild full = build_site(posts, prev.deploy_id);

    bool identical = inc.build.pages.size() == full.pages.size();
    std::set<std::string> changed;
    for (const auto& [path, page] : full.pages) {
      const RenderedPage* got = inc.build.find(path);
      identical = identical && got != nullptr && got->content_hash == page->content_hash;
      const RenderedPage* before = prev.find(path);
      if (before == nullptr || before->content_hash != page->content_hash) changed.insert(path);
    }
    const std::string at = "mutation " + std::to_string(i) + " (" + kind + ")";
    o.check(identical, at + ": not hash-identical to a full build");
    o.check(inc.build.source_digest == full.source_digest, at + ": source digest differs");
    o.check(inc.rebuilt_paths == changed, at + ": rebuilt set differs from changed pages");
    o.check(inc.rebuilt_paths == expected, at + ": rebuilt set differs from the expected set");
    prev = inc.build;
  }
  if (o.ok) {
    o.detail = std::to_string(kMutations) + " mutations:";
    for (const auto& [k, n] : kinds) o.detail += " " + k + "=" + std::to_string(n);
  }
  return o;
}

Outcome c8_percentiles() {
  Outcome o;
  std::mt19937_64 gen(8);
  std::lognormal_distribution<double> body(std::log(3e6), 0.8);
  std::uniform_real_distribution<double> tail(1e8, 5e9);
  LatencyHistogram h;
  std::vector<std::int64_t> raw;
  constexpr int kSamples = 100000;
  for (int i = 0; i < kSamples; ++i) {
    const double v = (gen() % 50 == 0) ? tail(gen) : body(gen);
    const auto ns = std::clamp<std::int64_t>(std::llround(v), 1000, 60'000'000'000);
    raw.push_back(ns);
    h.record(Duration(ns));
  }
  std::sort(raw.begin(), raw.end());
  double worst = 0;
  Duration prev{};
  std::vector<double> ps(kReportPercentiles.begin(), kReportPercentiles.end());
  for (double p = 1; p < 100; p += 1) ps.push_back(p);
  std::sort(ps.begin(), ps.end());
  for (const double p : ps) {
    auto rank = static_cast<std::size_t>(std::ceil(p / 100.0 * kSamples));
    rank = std::clamp<std::size_t>(rank, 1, raw.size());
    const double exact = static_cast<double>(raw[rank - 1]);
    const Duration got = h.percentile(p);
    const double err = std::abs(static_cast<double>(got.count()) - exact) / exact;
    worst = std::max(worst, err);
    o.check(err <= 0.01, "p" + std::to_string(p) + " relative error " + std::to_string(err));
    o.check(got >= prev, "percentiles not monotone at p" + std::to_string(p));
    prev = got;
  }
  o.check(h.percentile(100).count() == raw.back(), "p100 differs from max");
  if (o.ok) {
    std::ostringstream d;
    d << kSamples << " samples, " << ps.size() << " percentiles, worst error " << worst * 100
      << "%, p100 == max";
    o.detail = d.str();
  }
  return o;
}

Outcome c9_fcp_arithmetic() {
  Outcome o;
  const auto mobile = ThrottleProfile::mobile_throttled();
  const Duration empty = fcp_proxy(Duration::zero(), 0, mobile);
  const Duration ten_kb = fcp_proxy(Duration::zero(), 10000, mobile);
  o.check(empty == milliseconds(150), "empty body FCP " + ms(empty));
  o.check(ten_kb - empty == milliseconds(50), "10 kB adds " + ms(ten_kb - empty));

  VirtualClock clock;
  std::set<Duration::rep> transport_parts;
  std::set<std::string> bodies;
  for (const Strategy s : {Strategy::kStatic, Strategy::kSsr, Strategy::kIsr, Strategy::kDpr}) {
    StrategyConfig cfg;
    cfg.strategy = s;
    auto w = deployed_worker(cfg);
    for (int i = 0; i < 2; ++i) {
      const Response r = w->handle_request("/posts/post-3", clock);
      bodies.insert(std::string(r.body_view()));
      transport_parts.insert((fcp_proxy(r, mobile) - r.server_time).count());
    }
  }
  o.check(bodies.size() == 1, "strategies served different bodies");
  o.check(transport_parts.size() == 1, "FCP differs by more than server_time across strategies");
  if (o.ok) {
    o.detail = "empty " + ms(empty) + ", +10 kB " + ms(ten_kb - empty) +
               ", fcp - server_time constant across 4 strategies";
  }
  return o;
}

Outcome c10_determinism(const std::string& cli, const fs::path& work) {
  Outcome o;
  std::vector<fs::path> dirs = {work / "det_a", work / "det_b"};
  for (const auto& d : dirs) {
    fs::remove_all(d);
    const std::string cmd = "\"" + cli + "\" experiment --deterministic --seed 42 --duration 3 --out \"" +
                            d.string() + "\" > \"" + d.string() + ".log\" 2>&1";
    const int rc = std::system(cmd.c_str());
    o.check(rc == 0, "cli exited with " + std::to_string(rc) + ": " + cmd);
  }
  if (!o.ok) return o;
  int compared = 0;
  for (const char* name :
       {"summary.json", "audit.csv", "percentiles.csv", "audit.md", "percentiles.md"}) {
    const std::string a = slurp(dirs[0] / name);
    const std::string b = slurp(dirs[1] / name);
    o.check(!a.empty(), std::string(name) + " missing or empty");
    o.check(a == b, std::string(name) + " differs between runs");
    ++compared;
  }
  if (o.ok) o.detail = std::to_string(compared) + " files byte-identical across two runs";
  return o;
}

Outcome c11_throughput() {
  Outcome o;
  if (!c4_ran) c4_isr_follows_static();
  const BenchReport& r = c4_static;
  const double configured = std::chrono::duration<double>(r.duration).count();
  const double product = r.requests_per_second * configured;
  const double err =
      std::abs(product - static_cast<double>(r.total_responses)) / static_cast<double>(r.total_responses);
  std::ostringstream d;
  d << "STATIC " << r.total_responses << " responses in " << configured << " s, "
    << r.requests_per_second << " req/s, accounting error " << err * 100 << "%";
  o.detail = d.str();
  o.check(err <= 0.05, o.detail);
  o.check(r.requests_per_second >= 1000, "below 1000 req/s: " + o.detail);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli;
  std::string only;
  fs::path work = fs::temp_directory_path() / "edgelab_acceptance";
  for (int i = 1; i + 1 < argc; i += 2) {
    const std::string flag = argv[i];
    if (flag == "--cli") {
      cli = argv[i + 1];
    } else if (flag == "--work") {
      work = argv[i + 1];
    } else if (flag == "--only") {
      only = argv[i + 1];
    }
  }
  if (cli.empty()) {
    std::fprintf(stderr, "usage: %s --cli PATH [--work DIR] [--only Cn]\n", argv[0]);
    return 2;
  }
  fs::create_directories(work);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"C1 SSR vs cached p50 delta", c1_ssr_vs_cached},
      {"C2 ISR absorption", c2_isr_absorption},
      {"C3 cold-start signature", c3_cold_start},
      {"C4 ISR follows STATIC", c4_isr_follows_static},
      {"C5 DPR atomicity", c5_dpr_atomicity},
      {"C6 SWR contract", c6_swr_contract},
      {"C7 incremental SSG oracle", c7_incremental_oracle},
      {"C8 percentile oracle", c8_percentiles},
      {"C9 FCP proxy arithmetic", c9_fcp_arithmetic},
      {"C10 deterministic outputs", [&] { return c10_determinism(cli, work); }},
      {"C11 throughput accounting", c11_throughput},
  };
  int failed = 0;
  std::size_t ran = 0;
  for (const auto& [name, fn] : criteria) {
    if (!only.empty() && name.rfind(only + " ", 0) != 0) continue;
    ++ran;
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.ok) ++failed;
    std::printf("[%s] %s: %s (%.1f s)\n", o.ok ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(),
                secs);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(ran) - failed, ran);
  return failed == 0 ? 0 : 1;
}
