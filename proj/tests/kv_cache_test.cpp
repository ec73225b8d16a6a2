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

#include <gtest/gtest.h>

namespace edgelab {
namespace {

using std::chrono::milliseconds;

CacheEntry entry(std::int64_t deploy, TimePoint at = TimePoint{}) {
  return CacheEntry{"/", std::make_shared<const RenderedPage>(make_page("/", "x")), at, deploy, 0};
}

TEST(CacheEntryTest, StaleOnlyAfterTtl) {
  const CacheEntry e = entry(1, TimePoint(milliseconds(100)));
  EXPECT_FALSE(e.stale(TimePoint(milliseconds(1100)), milliseconds(1000)));
  EXPECT_TRUE(e.stale(TimePoint(milliseconds(1101)), milliseconds(1000)));
  EXPECT_FALSE(e.stale(TimePoint(milliseconds(1000000)), std::nullopt));
}

TEST(KvCacheTest, PutGetErase) {
  KvCache c;
  EXPECT_FALSE(c.get("/").has_value());
  const auto v1 = c.put("/", entry(1));
  const auto v2 = c.put("/", entry(2));
  EXPECT_LT(v1, v2);
  ASSERT_TRUE(c.get("/").has_value());
  EXPECT_EQ(c.get("/")->deploy_id, 2);
  EXPECT_EQ(c.get("/")->version, v2);
  EXPECT_TRUE(c.erase("/"));
  EXPECT_FALSE(c.erase("/"));
  EXPECT_EQ(c.size(), 0u);
}

TEST(KvCacheTest, CompareAndSwap) {
  KvCache c;
  EXPECT_TRUE(c.compare_and_swap("/", 0, entry(1)).has_value());
  EXPECT_FALSE(c.compare_and_swap("/", 0, entry(2)).has_value());
  const auto v = c.get("/")->version;
  EXPECT_FALSE(c.compare_and_swap("/", v + 1, entry(3)).has_value());
  EXPECT_TRUE(c.compare_and_swap("/", v, entry(4)).has_value());
  EXPECT_EQ(c.get("/")->deploy_id, 4);
}

TEST(KvCacheTest, PurgeBeatsLateWriter) {
  KvCache c;
  c.put("/", entry(1));
  const auto seen = c.get("/")->version;
  EXPECT_EQ(c.clear(), 1u);
  EXPECT_FALSE(c.compare_and_swap("/", seen, entry(1)).has_value());
  EXPECT_EQ(c.size(), 0u);
}

TEST(KvCacheTest, EraseIf) {
  KvCache c;
  c.put("a", entry(1));
  c.put("b", entry(2));
  c.put("c", entry(1));
  EXPECT_EQ(c.erase_if([](const CacheEntry& e) { return e.deploy_id == 1; }), 2u);
  EXPECT_EQ(c.size(), 1u);
  EXPECT_TRUE(c.get("b").has_value());
}

}  // namespace
}  // namespace edgelab
