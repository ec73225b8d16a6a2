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

#ifndef EDGELAB_NETMODEL_HPP_
#define EDGELAB_NETMODEL_HPP_

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "edgelab/clock.hpp"
#include "edgelab/edge.hpp"

namespace edgelab {

// Client link used to turn a server response into a first-contentful-paint
// estimate. The model is a single connection with fixed round-trip time and
// a linear downlink: no slow start, no header overhead.
struct ThrottleProfile {
  std::string name = "mobile-throttled";
  double downlink_bps = 1'600'000.0;  // +inf for an unthrottled link
  double uplink_bps = 750'000.0;
  Duration rtt = std::chrono::milliseconds(150);
  // Browser-side parse and paint cost. A calibration constant; always
  // reported next to the numbers it produced.
  Duration render_overhead = Duration::zero();

  // Throws Error(kInvalidArgument).
  void validate() const;
  bool operator==(const ThrottleProfile&) const = default;

  static ThrottleProfile mobile_throttled();
  // Every client cost zero, so FCP equals server time.
  static ThrottleProfile none();
  static std::optional<ThrottleProfile> preset(std::string_view name);
};

// bytes * 8 / downlink, rounded to the nearest nanosecond.
Duration transfer_time(std::uint64_t bytes, const ThrottleProfile& profile);

// rtt + server_time + transfer_time(body) + render_overhead.
Duration fcp_proxy(Duration server_time, std::uint64_t body_bytes, const ThrottleProfile& profile);
// Throws Error(kInvalidResponse) unless response.status is 200.
Duration fcp_proxy(const Response& response, const ThrottleProfile& profile);

}  // namespace edgelab

#endif  // EDGELAB_NETMODEL_HPP_
