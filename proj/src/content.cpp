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

#include "edgelab/content.hpp"

#include <array>
#include <cctype>
#include <charconv>

#include "edgelab/error.hpp"

namespace edgelab {
namespace {

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
// Decorrelates the per-post streams of neighbouring ids.
constexpr std::uint64_t kPostSalt = 0x632BE59BD9B4E019ULL;

constexpr std::array<std::string_view, 64> kLexicon = {
    "lorem",    "ipsum",     "dolor",      "sit",        "amet",      "consectetur",
    "adipiscing", "elit",    "sed",        "do",         "eiusmod",   "tempor",
    "incididunt", "ut",      "labore",     "et",         "dolore",    "magna",
    "aliqua",   "enim",      "ad",         "minim",      "veniam",    "quis",
    "nostrud",  "exercitation", "ullamco", "laboris",    "nisi",      "aliquip",
    "ex",       "ea",        "commodo",    "consequat",  "duis",      "aute",
    "irure",    "in",        "reprehenderit", "voluptate", "velit",   "esse",
    "cillum",   "fugiat",    "nulla",      "pariatur",   "excepteur", "sint",
    "occaecat", "cupidatat", "non",        "proident",   "sunt",      "culpa",
    "qui",      "officia",   "deserunt",   "mollit",     "anim",      "id",
    "est",      "laborum",   "porta",      "vitae",
};

void append_word(std::string& out, std::string_view word, bool capitalize) {
  const std::size_t start = out.size();
  out.append(word);
  if (capitalize) {
    out[start] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[start])));
  }
}

std::string_view pick_word(SplitMix64& rng) {
  return kLexicon[rng.below(kLexicon.size())];
}

}  // namespace

std::uint64_t SplitMix64::mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::next() {
  state_ += kGamma;
  return mix(state_);
}

void UpstreamConfig::validate() const {
  if (delay < Duration::zero()) {
    throw Error(ErrorCode::kInvalidArgument, "upstream delay must be >= 0");
  }
  if (post_count < 0) {
    throw Error(ErrorCode::kInvalidArgument, "post_count must be >= 0");
  }
  if (words.min_words < 1 || words.min_words > words.max_words) {
    throw Error(ErrorCode::kInvalidArgument, "word range must satisfy 1 <= min <= max");
  }
}

std::string post_slug(std::int64_t id) { return "post-" + std::to_string(id); }

std::optional<std::int64_t> parse_post_slug(std::string_view slug) {
  constexpr std::string_view kPrefix = "post-";
  if (!slug.starts_with(kPrefix)) return std::nullopt;
  slug.remove_prefix(kPrefix.size());
  if (slug.empty() || (slug.size() > 1 && slug.front() == '0')) return std::nullopt;
  std::int64_t id = 0;
  const auto [ptr, ec] = std::from_chars(slug.data(), slug.data() + slug.size(), id);
  if (ec != std::errc() || ptr != slug.data() + slug.size() || id < 0) return std::nullopt;
  return id;
}

std::size_t word_count(std::string_view text) {
  std::size_t count = 0;
  bool in_word = false;
  for (const char c : text) {
    const bool space = std::isspace(static_cast<unsigned char>(c)) != 0;
    if (!space && !in_word) ++count;
    in_word = !space;
  }
  return count;
}

Post generate_post(Seed seed, std::int64_t id, const WordRange& words) {
  SplitMix64 rng(seed.value ^ SplitMix64::mix(static_cast<std::uint64_t>(id) + kPostSalt));

  Post post;
  post.id = id;
  post.slug = post_slug(id);

  const auto title_words = 2 + rng.below(5);
  for (std::uint64_t i = 0; i < title_words; ++i) {
    if (i > 0) post.title.push_back(' ');
    append_word(post.title, pick_word(rng), true);
  }

  const auto span = static_cast<std::uint64_t>(words.max_words - words.min_words + 1);
  const auto total = static_cast<std::uint64_t>(words.min_words) + rng.below(span);
  std::uint64_t written = 0;
  while (written < total) {
    const auto sentence = std::min<std::uint64_t>(6 + rng.below(10), total - written);
    for (std::uint64_t i = 0; i < sentence; ++i) {
      if (!post.body.empty()) post.body.push_back(' ');
      append_word(post.body, pick_word(rng), i == 0);
    }
    post.body.push_back('.');
    written += sentence;
  }
  return post;
}

PostList generate_posts(Seed seed, std::int64_t count, const WordRange& words) {
  if (count < 0) throw Error(ErrorCode::kInvalidArgument, "post count must be >= 0");
  PostList posts;
  posts.reserve(static_cast<std::size_t>(count));
  for (std::int64_t id = 0; id < count; ++id) posts.push_back(generate_post(seed, id, words));
  return posts;
}

Post upstream_fetch(std::int64_t post_id, const UpstreamConfig& cfg, Clock& clock) {
  cfg.validate();
  if (post_id < 0 || post_id >= cfg.post_count) {
    throw Error(ErrorCode::kNotFound, "no post with id " + std::to_string(post_id));
  }
  clock.sleep_for(cfg.delay);
  return generate_post(cfg.seed, post_id, cfg.words);
}

std::string serialize_posts(std::span<const Post> posts) {
  // u64 little-endian count, then per post: u64 id and three
  // length-prefixed strings (slug, title, body).
  std::string out;
  auto put_u64 = [&out](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  };
  auto put_str = [&](std::string_view s) {
    put_u64(s.size());
    out.append(s);
  };
  put_u64(posts.size());
  for (const auto& p : posts) {
    put_u64(static_cast<std::uint64_t>(p.id));
    put_str(p.slug);
    put_str(p.title);
    put_str(p.body);
  }
  return out;
}

Digest content_digest(std::span<const Post> posts) { return sha256(serialize_posts(posts)); }

Digest post_digest(const Post& post) { return content_digest(std::span<const Post>(&post, 1)); }

PostStore::PostStore(std::shared_ptr<const PostList> posts, Duration delay)
    : posts_(std::move(posts)), delay_(delay) {
  if (!posts_) throw Error(ErrorCode::kInvalidArgument, "PostStore needs a post list");
}

std::shared_ptr<const PostList> PostStore::fetch_posts(Clock& clock) {
  clock.sleep_for(delay_);
  return posts_;
}

Post PostStore::fetch_post(std::int64_t id, Clock& clock) {
  clock.sleep_for(delay_);
  const auto& posts = *posts_;
  if (id >= 0 && static_cast<std::size_t>(id) < posts.size() && posts[id].id == id) {
    return posts[id];
  }
  for (const auto& p : posts) {
    if (p.id == id) return p;
  }
  throw Error(ErrorCode::kNotFound, "no post with id " + std::to_string(id));
}

}  // namespace edgelab
