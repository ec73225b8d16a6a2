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

#ifndef EDGELAB_KV_CACHE_HPP_
#define EDGELAB_KV_CACHE_HPP_

#include <cstdint>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>

#include "edgelab/clock.hpp"
#include "edgelab/ssg.hpp"

namespace edgelab {

struct CacheEntry {
  std::string path;
  PagePtr page;
  TimePoint stored_at{};
  std::int64_t deploy_id = 0;
  // Assigned by the cache on every write; used for compare-and-swap.
  std::uint64_t version = 0;

  // Strictly older than ttl. No ttl means never stale.
  bool stale(TimePoint now, std::optional<Duration> ttl) const {
    return ttl.has_value() && (now - stored_at) > *ttl;
  }
};

// In-process key-value store standing in for the edge platform's KV service.
// Every operation is linearizable per key (one mutex).
class KvCache {
 public:
  std::optional<CacheEntry> get(std::string_view key) const;
  // Unconditional write; returns the new version.
  std::uint64_t put(std::string key, CacheEntry entry);
  // Writes only if the current version equals expected_version (0 means the
  // key must be absent). Returns the new version, or nullopt on conflict.
  std::optional<std::uint64_t> compare_and_swap(std::string key, std::uint64_t expected_version,
                                                CacheEntry entry);
  bool erase(std::string_view key);
  std::size_t erase_if(const std::function<bool(const CacheEntry&)>& pred);
  std::size_t clear();
  std::size_t size() const;

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const { return std::hash<std::string_view>{}(s); }
  };

  mutable std::mutex mu_;
  std::unordered_map<std::string, CacheEntry, Hash, std::equal_to<>> map_;
  std::uint64_t next_version_ = 1;
};

}  // namespace edgelab

#endif  // EDGELAB_KV_CACHE_HPP_
