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

#include "edgelab/netmodel.hpp"

#include <cmath>
#include <limits>

#include "edgelab/error.hpp"

namespace edgelab {

void ThrottleProfile::validate() const {
  if (!(downlink_bps > 0) || !(uplink_bps > 0)) {
    throw Error(ErrorCode::kInvalidArgument, "throttle bandwidths must be > 0");
  }
  if (rtt < Duration::zero() || render_overhead < Duration::zero()) {
    throw Error(ErrorCode::kInvalidArgument, "rtt and render_overhead must be >= 0");
  }
  if (rtt == Duration::zero() && name != "none") {
    throw Error(ErrorCode::kInvalidArgument, "rtt must be > 0 (use the \"none\" preset for 0)");
  }
}

ThrottleProfile ThrottleProfile::mobile_throttled() { return ThrottleProfile{}; }

ThrottleProfile ThrottleProfile::none() {
  ThrottleProfile p;
  p.name = "none";
  p.downlink_bps = std::numeric_limits<double>::infinity();
  p.uplink_bps = std::numeric_limits<double>::infinity();
  p.rtt = Duration::zero();
  return p;
}

std::optional<ThrottleProfile> ThrottleProfile::preset(std::string_view name) {
  if (name == "mobile-throttled") return mobile_throttled();
  if (name == "none") return none();
  return std::nullopt;
}

Duration transfer_time(std::uint64_t bytes, const ThrottleProfile& profile) {
  if (std::isinf(profile.downlink_bps) || bytes == 0) return Duration::zero();
  const long double seconds =
      static_cast<long double>(bytes) * 8.0L / static_cast<long double>(profile.downlink_bps);
  return Duration(std::llround(seconds * 1e9L));
}

Duration fcp_proxy(Duration server_time, std::uint64_t body_bytes, const ThrottleProfile& profile) {
  return profile.rtt + server_time + transfer_time(body_bytes, profile) + profile.render_overhead;
}

Duration fcp_proxy(const Response& response, const ThrottleProfile& profile) {
  if (response.status != 200) {
    throw Error(ErrorCode::kInvalidResponse,
                "fcp_proxy needs a 200 response, got " + std::to_string(response.status));
  }
  return fcp_proxy(response.server_time, response.body_size(), profile);
}

}  // namespace edgelab
