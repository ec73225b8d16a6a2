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

#include "edgelab/kv_cache.hpp"

namespace edgelab {

std::optional<CacheEntry> KvCache::get(std::string_view key) const {
  std::lock_guard lock(mu_);
  const auto it = map_.find(key);
  if (it == map_.end()) return std::nullopt;
  return it->second;
}

std::uint64_t KvCache::put(std::string key, CacheEntry entry) {
  std::lock_guard lock(mu_);
  entry.version = next_version_++;
  const auto version = entry.version;
  map_.insert_or_assign(std::move(key), std::move(entry));
  return version;
}

std::optional<std::uint64_t> KvCache::compare_and_swap(std::string key,
                                                       std::uint64_t expected_version,
                                                       CacheEntry entry) {
  std::lock_guard lock(mu_);
  const auto it = map_.find(key);
  const std::uint64_t current = it == map_.end() ? 0 : it->second.version;
  if (current != expected_version) return std::nullopt;
  entry.version = next_version_++;
  const auto version = entry.version;
  if (it == map_.end()) {
    map_.emplace(std::move(key), std::move(entry));
  } else {
    it->second = std::move(entry);
  }
  return version;
}

bool KvCache::erase(std::string_view key) {
  std::lock_guard lock(mu_);
  const auto it = map_.find(key);
  if (it == map_.end()) return false;
  map_.erase(it);
  return true;
}

std::size_t KvCache::erase_if(const std::function<bool(const CacheEntry&)>& pred) {
  std::lock_guard lock(mu_);
  return std::erase_if(map_, [&](const auto& kv) { return pred(kv.second); });
}

std::size_t KvCache::clear() {
  std::lock_guard lock(mu_);
  const auto n = map_.size();
  map_.clear();
  return n;
}

std::size_t KvCache::size() const {
  std::lock_guard lock(mu_);
  return map_.size();
}

}  // namespace edgelab
