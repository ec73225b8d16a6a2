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

#include <charconv>
#include <thread>

// Loopback benchmarks need Nagle off and room for many simultaneous connects.
#define CPPHTTPLIB_TCP_NODELAY true
#define CPPHTTPLIB_LISTEN_BACKLOG 1024
#include "httplib.h"
#include "json.hpp"

#include "edgelab/error.hpp"

namespace edgelab {
namespace {

using nlohmann::json;

constexpr time_t kTimeoutSeconds = 10;

class HttpTarget final : public Target {
 public:
  HttpTarget(HttpEndpoint ep, std::string url)
      : ep_(std::move(ep)), url_(std::move(url)), client_(ep_.host, ep_.port) {
    client_.set_keep_alive(true);
    client_.set_tcp_nodelay(true);
    client_.set_connection_timeout(kTimeoutSeconds, 0);
    client_.set_read_timeout(kTimeoutSeconds, 0);
    client_.set_write_timeout(kTimeoutSeconds, 0);
  }

  // server_time is what the client observes: request sent to full response.
  Response fetch(std::string_view path, Clock& clock) override {
    const TimePoint t0 = clock.now();
    auto res = client_.Get(ep_.prefix + std::string(path));
    const TimePoint t1 = clock.now();
    if (!res) {
      throw Error(ErrorCode::kTargetUnreachable,
                  url_ + std::string(path) + ": " + httplib::to_string(res.error()));
    }
    Response r;
    r.status = res->status;
    r.body = std::make_shared<const std::string>(std::move(res->body));
    r.server_time = t1 - t0;
    if (auto s = parse_cache_status(res->get_header_value(std::string(kCacheHeader)))) {
      r.cache_status = *s;
    }
    const std::string deploy = res->get_header_value(std::string(kDeployHeader));
    std::from_chars(deploy.data(), deploy.data() + deploy.size(), r.deploy_id);
    return r;
  }

  std::size_t purge() override {
    auto res = client_.Post(ep_.prefix + std::string(kPurgePath), "", "application/json");
    if (!res || res->status != 200) {
      throw Error(ErrorCode::kTargetUnreachable, url_ + ": purge failed");
    }
    try {
      return json::parse(res->body).at("purged").get<std::size_t>();
    } catch (const json::exception&) {
      throw Error(ErrorCode::kInvalidResponse, url_ + ": bad purge reply");
    }
  }

  void make_cold() override {
    auto res = client_.Post(ep_.prefix + std::string(kColdPath), "", "application/json");
    if (!res || res->status != 200) {
      throw Error(ErrorCode::kTargetUnreachable, url_ + ": cold reset failed");
    }
  }

  std::unique_ptr<Target> connect() override { return std::make_unique<HttpTarget>(ep_, url_); }
  std::string describe() const override { return url_; }

 private:
  HttpEndpoint ep_;
  std::string url_;
  httplib::Client client_;
};

std::string micros(Duration d) {
  return std::to_string(std::chrono::duration_cast<std::chrono::microseconds>(d).count());
}

}  // namespace

std::optional<HttpEndpoint> parse_http_url(std::string_view url) {
  constexpr std::string_view kScheme = "http://";
  if (!url.starts_with(kScheme)) return std::nullopt;
  url.remove_prefix(kScheme.size());
  HttpEndpoint ep;
  const auto slash = url.find('/');
  std::string_view authority = url.substr(0, slash);
  if (slash != std::string_view::npos) {
    std::string_view prefix = url.substr(slash);
    while (!prefix.empty() && prefix.back() == '/') prefix.remove_suffix(1);
    ep.prefix = std::string(prefix);
  }
  const auto colon = authority.rfind(':');
  if (colon != std::string_view::npos) {
    const std::string_view port = authority.substr(colon + 1);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(port.data(), port.data() + port.size(), value);
    if (ec != std::errc() || ptr != port.data() + port.size() || value < 1 || value > 65535) {
      return std::nullopt;
    }
    ep.port = value;
    authority = authority.substr(0, colon);
  }
  if (authority.empty()) return std::nullopt;
  ep.host = std::string(authority);
  return ep;
}

std::unique_ptr<Target> make_http_target(std::string_view url) {
  auto ep = parse_http_url(url);
  if (!ep) throw Error(ErrorCode::kInvalidArgument, "not an http URL: " + std::string(url));
  std::string base(url);
  while (!base.empty() && base.back() == '/') base.pop_back();
  return std::make_unique<HttpTarget>(std::move(*ep), std::move(base));
}

std::string post_json(const Post& post) {
  return json{{"id", post.id},
              {"slug", post.slug},
              {"title", post.title},
              {"body", post.body},
              {"word_count", word_count(post.body)}}
      .dump();
}

struct EdgeServer::Impl {
  struct Listener {
    std::string name;
    int requested_port = 0;
    int port = 0;
    std::unique_ptr<httplib::Server> server;
    std::thread thread;
  };

  std::string host;
  std::vector<std::shared_ptr<EdgeWorker>> workers;  // keeps handlers' targets alive
  std::vector<Listener> listeners;
  bool started = false;

  static std::unique_ptr<httplib::Server> make_server() {
    auto svr = std::make_unique<httplib::Server>();
    svr->new_task_queue = [] { return new httplib::ThreadPool(64); };
    svr->set_keep_alive_max_count(1 << 30);
    svr->set_keep_alive_timeout(kTimeoutSeconds);
    // The library default adds SO_REUSEPORT, which lets a second server
    // share a busy port instead of failing.
    svr->set_socket_options([](socket_t sock) {
      int yes = 1;
      setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
    });
    return svr;
  }
};

EdgeServer::EdgeServer(std::string host) : impl_(std::make_unique<Impl>()) {
  impl_->host = std::move(host);
}

EdgeServer::~EdgeServer() { stop(); }

void EdgeServer::add_variant(std::string name, std::shared_ptr<EdgeWorker> worker, int port) {
  auto svr = Impl::make_server();
  EdgeWorker* w = worker.get();
  svr->Post(std::string(kPurgePath), [w](const httplib::Request&, httplib::Response& res) {
    const std::size_t n = w->purge_cache();
    res.set_content(json{{"purged", n}}.dump(), "application/json");
  });
  svr->Post(std::string(kColdPath), [w](const httplib::Request&, httplib::Response& res) {
    w->cold_worker();
    res.set_content(json{{"cold", true}}.dump(), "application/json");
  });
  svr->Get(std::string(kStatsPath), [w](const httplib::Request&, httplib::Response& res) {
    const WorkerStats s = w->stats();
    res.set_content(json{{"strategy", std::string(to_string(w->config().strategy))},
                         {"deploy_id", w->current_deploy_id()},
                         {"cache_entries", w->cache_size()},
                         {"requests", s.requests},
                         {"renders", s.renders},
                         {"revalidations_scheduled", s.revalidations_scheduled},
                         {"revalidations_completed", s.revalidations_completed},
                         {"revalidations_failed", s.revalidations_failed}}
                        .dump(),
                    "application/json");
  });
  svr->Get(".*", [w](const httplib::Request& req, httplib::Response& res) {
    const Response r = w->handle_request(req.path, SystemClock::instance());
    res.status = r.status;
    res.set_header(std::string(kCacheHeader), std::string(to_string(r.cache_status)));
    res.set_header(std::string(kServerTimeHeader), micros(r.server_time));
    res.set_header(std::string(kDeployHeader), std::to_string(r.deploy_id));
    res.set_content(std::string(r.body_view()), "text/html; charset=utf-8");
  });
  impl_->workers.push_back(std::move(worker));
  impl_->listeners.push_back({std::move(name), port, 0, std::move(svr), {}});
}

void EdgeServer::add_content(std::shared_ptr<const PostList> posts, Duration delay, int port) {
  auto svr = Impl::make_server();
  svr->Get("/posts", [posts, delay](const httplib::Request&, httplib::Response& res) {
    SystemClock::instance().sleep_for(delay);
    json arr = json::array();
    for (const auto& p : *posts) arr.push_back(json::parse(post_json(p)));
    res.set_content(arr.dump(), "application/json");
  });
  svr->Get(R"(/posts/(\d+))", [posts, delay](const httplib::Request& req, httplib::Response& res) {
    SystemClock::instance().sleep_for(delay);
    const std::string id_text = req.matches[1];
    std::int64_t id = -1;
    std::from_chars(id_text.data(), id_text.data() + id_text.size(), id);
    if (id < 0 || id >= static_cast<std::int64_t>(posts->size())) {
      res.status = 404;
      res.set_content(json{{"error", "no such post"}}.dump(), "application/json");
      return;
    }
    res.set_content(post_json((*posts)[static_cast<std::size_t>(id)]), "application/json");
  });
  impl_->listeners.push_back({"content", port, 0, std::move(svr), {}});
}

void EdgeServer::start() {
  if (impl_->started) return;
  for (auto& l : impl_->listeners) {
    if (l.requested_port == 0) {
      l.port = l.server->bind_to_any_port(impl_->host);
    } else {
      l.port = l.server->bind_to_port(impl_->host, l.requested_port) ? l.requested_port : -1;
    }
    if (l.port < 0) {
      const std::string what = impl_->host + ":" + std::to_string(l.requested_port);
      for (auto& other : impl_->listeners) other.server->stop();
      throw Error(ErrorCode::kPortInUse, "cannot bind " + what + " for " + l.name);
    }
  }
  for (auto& l : impl_->listeners) {
    httplib::Server* svr = l.server.get();
    l.thread = std::thread([svr] { svr->listen_after_bind(); });
  }
  for (auto& l : impl_->listeners) l.server->wait_until_ready();
  impl_->started = true;
}

void EdgeServer::stop() {
  if (!impl_->started) return;
  for (auto& l : impl_->listeners) l.server->stop();
  for (auto& l : impl_->listeners) {
    if (l.thread.joinable()) l.thread.join();
  }
  for (auto& w : impl_->workers) w->drain_background();
  impl_->started = false;
}

std::vector<std::pair<std::string, int>> EdgeServer::port_map() const {
  std::vector<std::pair<std::string, int>> out;
  for (const auto& l : impl_->listeners) out.emplace_back(l.name, l.port);
  return out;
}

std::string EdgeServer::url_for(std::string_view name) const {
  for (const auto& l : impl_->listeners) {
    if (l.name == name) return "http://" + impl_->host + ":" + std::to_string(l.port);
  }
  throw Error(ErrorCode::kNotFound, "no listener named " + std::string(name));
}

}  // namespace edgelab
