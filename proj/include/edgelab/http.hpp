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

#ifndef EDGELAB_HTTP_HPP_
#define EDGELAB_HTTP_HPP_

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "edgelab/bench.hpp"
#include "edgelab/content.hpp"
#include "edgelab/edge.hpp"

namespace edgelab {

// Response headers set by serve mode.
inline constexpr std::string_view kCacheHeader = "x-edge-cache";
inline constexpr std::string_view kServerTimeHeader = "x-server-time-us";
inline constexpr std::string_view kDeployHeader = "x-deploy-id";

// Admin endpoints on every variant port.
inline constexpr std::string_view kPurgePath = "/__admin/purge";  // POST -> {"purged": n}
inline constexpr std::string_view kColdPath = "/__admin/cold";    // POST -> {"cold": true}
inline constexpr std::string_view kStatsPath = "/__admin/stats";  // GET

struct HttpEndpoint {
  std::string host;
  int port = 80;
  std::string prefix;  // path prefix without trailing slash, may be empty
};

// Accepts "http://host[:port][/prefix]".
std::optional<HttpEndpoint> parse_http_url(std::string_view url);

// Target over HTTP/1.1 keep-alive. server_time comes from the
// x-server-time-us header when present.
std::unique_ptr<Target> make_http_target(std::string_view url);

// JSON encoding used by the standalone content server: an object with id,
// slug, title, body and word_count.
std::string post_json(const Post& post);

// Hosts any number of variants, one port each, plus an optional content
// server. Ports of 0 pick a free ephemeral port.
class EdgeServer {
 public:
  explicit EdgeServer(std::string host = "127.0.0.1");
  EdgeServer(const EdgeServer&) = delete;
  EdgeServer& operator=(const EdgeServer&) = delete;
  ~EdgeServer();

  void add_variant(std::string name, std::shared_ptr<EdgeWorker> worker, int port);
  // GET /posts and GET /posts/<id>, each after `delay`.
  void add_content(std::shared_ptr<const PostList> posts, Duration delay, int port);

  // Binds every port and starts serving. Throws Error(kPortInUse).
  void start();
  void stop();

  // (name, bound port) in registration order; the content server, if any,
  // is listed as "content".
  std::vector<std::pair<std::string, int>> port_map() const;
  std::string url_for(std::string_view name) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace edgelab

#endif  // EDGELAB_HTTP_HPP_
