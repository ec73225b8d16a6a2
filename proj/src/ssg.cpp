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

#include "edgelab/ssg.hpp"

#include <fstream>
#include <system_error>

#include "edgelab/error.hpp"

namespace edgelab {
namespace {

constexpr std::string_view kSiteTitle = "Edge Blog";

std::string escape_html(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (const char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

// Shared page shell; `main` is already-escaped markup.
std::string layout(std::string_view title, std::string_view main) {
  std::string html;
  html.reserve(main.size() + 256);
  html += "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n";
  html += "<meta name=\"viewport\" content=\"width=device-width, initial-scale=1\">\n";
  html += "<title>";
  html += title;
  html += "</title>\n</head>\n<body>\n<main>\n";
  html += main;
  html += "</main>\n</body>\n</html>\n";
  return html;
}

}  // namespace

RenderedPage make_page(std::string path, std::string body) {
  RenderedPage page;
  page.content_hash = sha256(body);
  page.path = std::move(path);
  page.body = std::move(body);
  return page;
}

std::string post_path(std::string_view slug) {
  std::string path = "/posts/";
  path += slug;
  return path;
}

const RenderedPage* SiteBuild::find(std::string_view path) const {
  const auto it = pages.find(path);
  return it == pages.end() ? nullptr : it->second.get();
}

RenderedPage render_index(std::span<const Post> posts) {
  std::string main;
  main.reserve(64 + posts.size() * 80);
  main += "<h1>";
  main += kSiteTitle;
  main += "</h1>\n<ul class=\"posts\">\n";
  for (const auto& post : posts) {
    main += "<li><a href=\"";
    main += escape_html(post_path(post.slug));
    main += "\">";
    main += escape_html(post.title);
    main += "</a></li>\n";
  }
  main += "</ul>\n";
  return make_page(std::string(kIndexPath), layout(kSiteTitle, main));
}

RenderedPage render_post(const Post& post) {
  const std::string title = escape_html(post.title);
  std::string main;
  main.reserve(post.body.size() + title.size() + 96);
  main += "<article>\n<h1>";
  main += title;
  main += "</h1>\n<p>";
  main += escape_html(post.body);
  main += "</p>\n</article>\n<nav><a href=\"/\">Back to index</a></nav>\n";
  std::string page_title = title;
  page_title += " | ";
  page_title += kSiteTitle;
  return make_page(post_path(post.slug), layout(page_title, main));
}

Digest link_digest(std::span<const Post> posts) {
  Sha256 h;
  h.update_field("edgelab.links.v1");
  h.update_u64(posts.size());
  for (const auto& p : posts) {
    h.update_field(p.slug);
    h.update_field(p.title);
  }
  return h.finish();
}

SiteBuild build_site(std::span<const Post> posts, std::int64_t prev_deploy_id,
                     std::int64_t built_at) {
  SiteBuild build;
  build.deploy_id = prev_deploy_id + 1;
  build.built_at = built_at;
  build.source_digest = content_digest(posts);
  build.link_digest = link_digest(posts);
  build.source = std::make_shared<const PostList>(posts.begin(), posts.end());
  build.pages.emplace(std::string(kIndexPath),
                      std::make_shared<const RenderedPage>(render_index(posts)));
  for (const auto& post : posts) {
    auto page = std::make_shared<const RenderedPage>(render_post(post));
    build.post_digests.emplace(page->path, post_digest(post));
    build.pages.emplace(page->path, std::move(page));
  }
  return build;
}

IncrementalBuild incremental_rebuild(const SiteBuild& prev, std::span<const Post> posts,
                                     std::int64_t built_at) {
  IncrementalBuild out;
  SiteBuild& build = out.build;
  build.deploy_id = prev.deploy_id + 1;
  build.built_at = built_at;
  build.source_digest = content_digest(posts);
  build.link_digest = link_digest(posts);
  build.source = std::make_shared<const PostList>(posts.begin(), posts.end());

  const std::string index(kIndexPath);
  const PagePtr* prev_index = nullptr;
  if (const auto it = prev.pages.find(index); it != prev.pages.end()) prev_index = &it->second;
  if (prev_index != nullptr && prev.link_digest == build.link_digest) {
    build.pages.emplace(index, *prev_index);
  } else {
    build.pages.emplace(index, std::make_shared<const RenderedPage>(render_index(posts)));
    out.rebuilt_paths.insert(index);
  }

  for (const Post& post : posts) {
    const Digest digest = post_digest(post);
    const std::string path = post_path(post.slug);
    build.post_digests.emplace(path, digest);
    const auto prev_digest = prev.post_digests.find(path);
    const auto prev_page = prev.pages.find(path);
    const bool unchanged = prev_digest != prev.post_digests.end() &&
                           prev_digest->second == digest && prev_page != prev.pages.end();
    if (unchanged) {
      build.pages.emplace(path, prev_page->second);
    } else {
      build.pages.emplace(path, std::make_shared<const RenderedPage>(render_post(post)));
      out.rebuilt_paths.insert(path);
    }
  }
  return out;
}

std::filesystem::path export_relpath(std::string_view page_path) {
  std::filesystem::path rel;
  std::string_view trimmed = page_path;
  while (!trimmed.empty() && trimmed.front() == '/') trimmed.remove_prefix(1);
  if (!trimmed.empty()) rel /= std::filesystem::path(std::string(trimmed));
  return rel / "index.html";
}

void export_site(const SiteBuild& build, const std::filesystem::path& dir) {
  for (const auto& [path, page] : build.pages) {
    const auto file = dir / export_relpath(path);
    std::error_code ec;
    std::filesystem::create_directories(file.parent_path(), ec);
    if (ec) throw Error(ErrorCode::kIo, "cannot create " + file.parent_path().string() + ": " + ec.message());
    std::ofstream os(file, std::ios::binary | std::ios::trunc);
    os.write(page->body.data(), static_cast<std::streamsize>(page->body.size()));
    if (!os) throw Error(ErrorCode::kIo, "cannot write " + file.string());
  }
}

}  // namespace edgelab
