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

#ifndef EDGELAB_HISTOGRAM_HPP_
#define EDGELAB_HISTOGRAM_HPP_

#include <chrono>
#include <cstdint>
#include <vector>

#include "edgelab/clock.hpp"

namespace edgelab {

// Log-linear latency histogram over [1 us, 60 s].
//
// Samples are kept in nanoseconds. Each power-of-two range is split into 128
// equal sub-buckets, so a bucket is at most 1/128 of its lower bound wide and
// the reported midpoint is within 0.4% of any sample in it. Percentiles use
// the nearest-rank definition: the smallest recorded value v such that at
// least p% of samples are <= v. min and max are tracked exactly and
// percentile(100) returns max.
//
// Not thread-safe; load generators keep one per connection and merge.
class LatencyHistogram {
 public:
  static constexpr Duration kLowest = std::chrono::microseconds(1);
  static constexpr Duration kHighest = std::chrono::seconds(60);

  LatencyHistogram();

  // Out-of-range samples are clamped and counted in clamped_count().
  void record(Duration sample);
  void merge(const LatencyHistogram& other);

  // p in (0, 100]. Throws Error(kEmptyHistogram) when nothing was recorded
  // and Error(kInvalidArgument) for p outside the range.
  Duration percentile(double p) const;

  std::uint64_t total_count() const { return total_; }
  std::uint64_t clamped_count() const { return clamped_; }
  Duration min() const;
  Duration max() const;
  Duration mean() const;
  // Sum of per-bucket counts; equals total_count().
  std::uint64_t bucket_total() const;

  static std::size_t bucket_index(std::int64_t ns);
  static std::int64_t bucket_lower(std::size_t index);
  static std::int64_t bucket_upper(std::size_t index);  // exclusive

 private:
  std::vector<std::uint64_t> counts_;
  std::uint64_t total_ = 0;
  std::uint64_t clamped_ = 0;
  std::int64_t min_ns_ = 0;
  std::int64_t max_ns_ = 0;
  long double sum_ns_ = 0;
};

}  // namespace edgelab

#endif  // EDGELAB_HISTOGRAM_HPP_
