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

#ifndef EDGELAB_CONTENT_HPP_
#define EDGELAB_CONTENT_HPP_

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "edgelab/clock.hpp"
#include "edgelab/digest.hpp"

namespace edgelab {

struct Seed {
  std::uint64_t value = 42;
  bool operator==(const Seed&) const = default;
};

// SplitMix64. State advances by the 64-bit golden-ratio increment
// 0x9E3779B97F4A7C15 and each output goes through the finalizer
//   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//   z =  z ^ (z >> 31)
// Output is identical on every platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t state) : state_(state) {}

  std::uint64_t next();
  // Value in [0, bound). Plain modulo reduction; bound must be > 0.
  std::uint64_t below(std::uint64_t bound) { return next() % bound; }

  static std::uint64_t mix(std::uint64_t z);

 private:
  std::uint64_t state_;
};

struct Post {
  std::int64_t id = 0;
  std::string slug;
  std::string title;
  std::string body;  // plain text, no markup

  bool operator==(const Post&) const = default;
};

using PostList = std::vector<Post>;

struct WordRange {
  int min_words = 50;
  int max_words = 500;

  bool operator==(const WordRange&) const = default;
};

struct UpstreamConfig {
  Duration delay = std::chrono::milliseconds(100);
  std::int64_t post_count = 100;
  Seed seed;
  WordRange words;

  // Throws Error(kInvalidArgument).
  void validate() const;
};

std::string post_slug(std::int64_t id);
// Inverse of post_slug; nullopt for anything that is not "post-<digits>".
std::optional<std::int64_t> parse_post_slug(std::string_view slug);

std::size_t word_count(std::string_view text);

// Post #id of the stream for seed. Depends only on (seed, id, words).
Post generate_post(Seed seed, std::int64_t id, const WordRange& words = {});
PostList generate_posts(Seed seed, std::int64_t count, const WordRange& words = {});

// Simulated content server: waits cfg.delay on clock, then returns the same
// post generate_posts would produce at that index. Throws Error(kNotFound)
// when post_id is outside [0, cfg.post_count).
Post upstream_fetch(std::int64_t post_id, const UpstreamConfig& cfg, Clock& clock);

// Canonical byte encoding hashed by content_digest.
std::string serialize_posts(std::span<const Post> posts);
Digest content_digest(std::span<const Post> posts);
Digest post_digest(const Post& post);

// Where edge renderers get their data. Every call costs one upstream delay.
class ContentSource {
 public:
  virtual ~ContentSource() = default;
  virtual std::shared_ptr<const PostList> fetch_posts(Clock& clock) = 0;
  virtual Post fetch_post(std::int64_t id, Clock& clock) = 0;
};

// In-memory snapshot served with a fixed delay per call.
class PostStore final : public ContentSource {
 public:
  PostStore(std::shared_ptr<const PostList> posts, Duration delay);

  std::shared_ptr<const PostList> fetch_posts(Clock& clock) override;
  Post fetch_post(std::int64_t id, Clock& clock) override;

 private:
  std::shared_ptr<const PostList> posts_;
  Duration delay_;
};

}  // namespace edgelab

#endif  // EDGELAB_CONTENT_HPP_
