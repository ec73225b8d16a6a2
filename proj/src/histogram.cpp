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

#include "edgelab/histogram.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "edgelab/error.hpp"

namespace edgelab {
namespace {

constexpr int kSubBits = 7;
constexpr std::int64_t kSubCount = std::int64_t{1} << kSubBits;  // 128
constexpr std::int64_t kLinearLimit = 2 * kSubCount;             // 256

constexpr std::int64_t kLowestNs = LatencyHistogram::kLowest.count();
constexpr std::int64_t kHighestNs = LatencyHistogram::kHighest.count();

}  // namespace

std::size_t LatencyHistogram::bucket_index(std::int64_t ns) {
  if (ns < kLinearLimit) return static_cast<std::size_t>(std::max<std::int64_t>(ns, 0));
  const int exponent = std::bit_width(static_cast<std::uint64_t>(ns)) - 1;
  const int shift = exponent - kSubBits;
  const std::int64_t sub = (ns >> shift) - kSubCount;
  return static_cast<std::size_t>(kLinearLimit + (exponent - kSubBits - 1) * kSubCount + sub);
}

std::int64_t LatencyHistogram::bucket_lower(std::size_t index) {
  const auto i = static_cast<std::int64_t>(index);
  if (i < kLinearLimit) return i;
  const std::int64_t k = i - kLinearLimit;
  const std::int64_t shift = k / kSubCount + 1;
  return (kSubCount + k % kSubCount) << shift;
}

std::int64_t LatencyHistogram::bucket_upper(std::size_t index) {
  const auto i = static_cast<std::int64_t>(index);
  if (i < kLinearLimit) return i + 1;
  const std::int64_t k = i - kLinearLimit;
  const std::int64_t shift = k / kSubCount + 1;
  return (kSubCount + k % kSubCount + 1) << shift;
}

LatencyHistogram::LatencyHistogram() : counts_(bucket_index(kHighestNs) + 1, 0) {}

void LatencyHistogram::record(Duration sample) {
  std::int64_t ns = sample.count();
  if (ns < kLowestNs || ns > kHighestNs) {
    ++clamped_;
    ns = std::clamp(ns, kLowestNs, kHighestNs);
  }
  ++counts_[bucket_index(ns)];
  if (total_ == 0) {
    min_ns_ = max_ns_ = ns;
  } else {
    min_ns_ = std::min(min_ns_, ns);
    max_ns_ = std::max(max_ns_, ns);
  }
  ++total_;
  sum_ns_ += static_cast<long double>(ns);
}

void LatencyHistogram::merge(const LatencyHistogram& other) {
  if (other.total_ == 0) return;
  for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
  if (total_ == 0) {
    min_ns_ = other.min_ns_;
    max_ns_ = other.max_ns_;
  } else {
    min_ns_ = std::min(min_ns_, other.min_ns_);
    max_ns_ = std::max(max_ns_, other.max_ns_);
  }
  total_ += other.total_;
  clamped_ += other.clamped_;
  sum_ns_ += other.sum_ns_;
}

Duration LatencyHistogram::percentile(double p) const {
  if (total_ == 0) throw Error(ErrorCode::kEmptyHistogram, "percentile of an empty histogram");
  if (!(p > 0.0 && p <= 100.0)) {
    throw Error(ErrorCode::kInvalidArgument, "percentile must be in (0, 100]");
  }
  auto rank = static_cast<std::uint64_t>(std::ceil(p / 100.0 * static_cast<double>(total_)));
  rank = std::clamp<std::uint64_t>(rank, 1, total_);
  if (rank == total_) return Duration(max_ns_);
  if (rank == 1) return Duration(min_ns_);

  std::uint64_t seen = 0;
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    seen += counts_[i];
    if (seen >= rank) {
      const std::int64_t mid = (bucket_lower(i) + bucket_upper(i) - 1) / 2;
      return Duration(std::clamp(mid, min_ns_, max_ns_));
    }
  }
  return Duration(max_ns_);
}

Duration LatencyHistogram::min() const { return Duration(total_ == 0 ? 0 : min_ns_); }

Duration LatencyHistogram::max() const { return Duration(total_ == 0 ? 0 : max_ns_); }

Duration LatencyHistogram::mean() const {
  if (total_ == 0) return Duration::zero();
  return Duration(std::llround(sum_ns_ / static_cast<long double>(total_)));
}

std::uint64_t LatencyHistogram::bucket_total() const {
  return std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
}

}  // namespace edgelab
