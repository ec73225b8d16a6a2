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

#include "edgelab/http.hpp"

#include <gtest/gtest.h>

#include <memory>

#include "httplib.h"
#include "json.hpp"

#include "edgelab/bench.hpp"
#include "edgelab/error.hpp"

namespace edgelab {
namespace {

using std::chrono::milliseconds;

std::shared_ptr<const SiteBuild> site() {
  return std::make_shared<const SiteBuild>(
      build_site(generate_posts(Seed{42}, 3, WordRange{10, 20}), 0));
}

std::shared_ptr<EdgeWorker> worker(Strategy s) {
  StrategyConfig cfg;
  cfg.strategy = s;
  cfg.upstream_delay = milliseconds(20);
  auto w = std::make_shared<EdgeWorker>(cfg);
  w->deploy(site());
  return w;
}

TEST(HttpTest, ParseUrl) {
  auto ep = parse_http_url("http://127.0.0.1:8080");
  ASSERT_TRUE(ep);
  EXPECT_EQ(ep->host, "127.0.0.1");
  EXPECT_EQ(ep->port, 8080);
  EXPECT_EQ(ep->prefix, "");
  ep = parse_http_url("http://example.test/edge/");
  ASSERT_TRUE(ep);
  EXPECT_EQ(ep->port, 80);
  EXPECT_EQ(ep->prefix, "/edge");
  EXPECT_FALSE(parse_http_url("https://x"));
  EXPECT_FALSE(parse_http_url("http://x:0"));
  EXPECT_FALSE(parse_http_url("http://x:99999"));
  EXPECT_FALSE(parse_http_url("http://:80"));
  EXPECT_THROW(make_http_target("ftp://x"), Error);
}

TEST(HttpTest, ServesVariantsOverLoopback) {
  EdgeServer server("127.0.0.1");
  auto isr = worker(Strategy::kIsr);
  server.add_variant("isr", isr, 0);
  server.add_variant("ssg", worker(Strategy::kStatic), 0);
  server.start();
  const auto ports = server.port_map();
  ASSERT_EQ(ports.size(), 2u);
  EXPECT_EQ(ports[0].first, "isr");
  EXPECT_GT(ports[0].second, 0);

  auto target = make_http_target(server.url_for("isr"));
  EXPECT_EQ(target->describe(), server.url_for("isr"));
  Response r = target->fetch("/", SystemClock::instance());
  EXPECT_EQ(r.status, 200);
  EXPECT_EQ(r.cache_status, CacheStatus::kMiss);
  EXPECT_EQ(r.deploy_id, 1);
  EXPECT_GE(r.server_time, milliseconds(20));
  EXPECT_EQ(r.body_view(), site()->find("/")->body);
  r = target->fetch("/", SystemClock::instance());
  EXPECT_EQ(r.cache_status, CacheStatus::kHit);

  EXPECT_EQ(target->purge(), 1u);
  EXPECT_EQ(isr->cache_size(), 0u);
  target->make_cold();

  r = target->fetch("/missing", SystemClock::instance());
  EXPECT_EQ(r.status, 404);
  EXPECT_EQ(r.cache_status, CacheStatus::kBypass);

  httplib::Client c("127.0.0.1", ports[0].second);
  auto stats = c.Get(std::string(kStatsPath));
  ASSERT_TRUE(stats);
  const auto j = nlohmann::json::parse(stats->body);
  EXPECT_EQ(j.at("strategy"), "ISR");
  EXPECT_EQ(j.at("requests"), 3);

  auto ssg = make_http_target(server.url_for("ssg"));
  EXPECT_EQ(ssg->fetch("/posts/post-1", SystemClock::instance()).cache_status,
            CacheStatus::kBypass);
  EXPECT_THROW(server.url_for("nope"), Error);
  server.stop();
  EXPECT_THROW(target->fetch("/", SystemClock::instance()), Error);
}

TEST(HttpTest, ContentServer) {
  auto posts = std::make_shared<const PostList>(generate_posts(Seed{42}, 3, WordRange{10, 20}));
  EdgeServer server("127.0.0.1");
  server.add_content(posts, Duration::zero(), 0);
  server.start();
  httplib::Client c("127.0.0.1", server.port_map().front().second);
  auto all = c.Get("/posts");
  ASSERT_TRUE(all);
  const auto arr = nlohmann::json::parse(all->body);
  ASSERT_EQ(arr.size(), 3u);
  EXPECT_EQ(arr[1].at("slug"), "post-1");
  EXPECT_EQ(arr[1].at("word_count"), word_count((*posts)[1].body));
  auto one = c.Get("/posts/2");
  ASSERT_TRUE(one);
  EXPECT_EQ(nlohmann::json::parse(one->body).at("title"), (*posts)[2].title);
  auto missing = c.Get("/posts/9");
  ASSERT_TRUE(missing);
  EXPECT_EQ(missing->status, 404);
}

TEST(HttpTest, PortInUse) {
  EdgeServer first("127.0.0.1");
  first.add_variant("a", worker(Strategy::kStatic), 0);
  first.start();
  const int port = first.port_map().front().second;
  EdgeServer second("127.0.0.1");
  second.add_variant("b", worker(Strategy::kStatic), port);
  try {
    second.start();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kPortInUse);
  }
}

TEST(HttpTest, LoadOverHttp) {
  EdgeServer server("127.0.0.1");
  server.add_variant("ssg", worker(Strategy::kStatic), 0);
  server.start();
  auto target = make_http_target(server.url_for("ssg"));
  BenchConfig cfg;
  cfg.duration = milliseconds(500);
  cfg.connections = 4;
  const BenchReport r = run_load(*target, cfg, SystemClock::instance());
  EXPECT_GT(r.total_responses, 20u);
  EXPECT_EQ(r.error_count, 0u);
}

}  // namespace
}  // namespace edgelab
