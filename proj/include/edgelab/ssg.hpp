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

#ifndef EDGELAB_SSG_HPP_
#define EDGELAB_SSG_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "edgelab/content.hpp"
#include "edgelab/digest.hpp"

namespace edgelab {

struct RenderedPage {
  std::string path;
  std::string body;     // HTML
  Digest content_hash;  // sha256(body)
};

using PagePtr = std::shared_ptr<const RenderedPage>;

RenderedPage make_page(std::string path, std::string body);

inline constexpr std::string_view kIndexPath = "/";
std::string post_path(std::string_view slug);

// Immutable snapshot produced by one build. Share it as
// std::shared_ptr<const SiteBuild>.
struct SiteBuild {
  std::int64_t deploy_id = 0;
  std::map<std::string, PagePtr, std::less<>> pages;
  Digest source_digest;        // content_digest of the source posts
  std::int64_t built_at = 0;   // nanoseconds, caller-supplied
  // Change detection state for incremental rebuilds.
  std::map<std::string, Digest, std::less<>> post_digests;  // post_digest by page path
  Digest link_digest;                // post count, slugs and titles
  // Source posts; absent when the build was loaded back from an export.
  std::shared_ptr<const PostList> source;

  const RenderedPage* find(std::string_view path) const;
};

RenderedPage render_index(std::span<const Post> posts);
RenderedPage render_post(const Post& post);

// Digest of everything the index page shows: count, slugs and titles.
Digest link_digest(std::span<const Post> posts);

SiteBuild build_site(std::span<const Post> posts, std::int64_t prev_deploy_id,
                     std::int64_t built_at = 0);

struct IncrementalBuild {
  SiteBuild build;
  std::set<std::string> rebuilt_paths;
};

// Re-renders only post pages whose source changed, plus "/" when the link
// digest changed. The result equals build_site(posts, prev.deploy_id) page
// for page.
IncrementalBuild incremental_rebuild(const SiteBuild& prev, std::span<const Post> posts,
                                     std::int64_t built_at = 0);

// "/" -> index.html, "/posts/<slug>" -> posts/<slug>/index.html
std::filesystem::path export_relpath(std::string_view page_path);

// Writes every page under dir. Throws Error(kIo).
void export_site(const SiteBuild& build, const std::filesystem::path& dir);

}  // namespace edgelab

#endif  // EDGELAB_SSG_HPP_
