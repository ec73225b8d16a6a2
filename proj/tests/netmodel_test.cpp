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

#include <gtest/gtest.h>

#include "edgelab/error.hpp"

namespace edgelab {
namespace {

using std::chrono::milliseconds;

TEST(NetModelTest, MobileDefaults) {
  const ThrottleProfile p = ThrottleProfile::mobile_throttled();
  EXPECT_EQ(p.name, "mobile-throttled");
  EXPECT_EQ(p.downlink_bps, 1.6e6);
  EXPECT_EQ(p.uplink_bps, 750e3);
  EXPECT_EQ(p.rtt, milliseconds(150));
  EXPECT_EQ(p.render_overhead, Duration::zero());
}

TEST(NetModelTest, EmptyBodyIsOneRoundTrip) {
  EXPECT_EQ(fcp_proxy(Duration::zero(), 0, ThrottleProfile::mobile_throttled()), milliseconds(150));
}

TEST(NetModelTest, TransferTime) {
  const auto p = ThrottleProfile::mobile_throttled();
  // 10'000 bytes * 8 / 1.6 Mbit/s = 50 ms.
  EXPECT_EQ(transfer_time(10'000, p), milliseconds(50));
  EXPECT_EQ(fcp_proxy(Duration::zero(), 10'000, p), milliseconds(200));
  // 1 byte = 5 us.
  EXPECT_EQ(transfer_time(1, p), std::chrono::microseconds(5));
}

TEST(NetModelTest, NonePresetPassesServerTimeThrough) {
  const auto p = ThrottleProfile::none();
  EXPECT_EQ(fcp_proxy(milliseconds(42), 1'000'000, p), milliseconds(42));
}

TEST(NetModelTest, RenderOverheadIsAdded) {
  auto p = ThrottleProfile::mobile_throttled();
  p.render_overhead = milliseconds(30);
  EXPECT_EQ(fcp_proxy(milliseconds(1), 0, p), milliseconds(181));
}

TEST(NetModelTest, ResponseOverloadNeeds200) {
  Response r;
  r.status = 404;
  r.body = std::make_shared<const std::string>("x");
  try {
    fcp_proxy(r, ThrottleProfile::mobile_throttled());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidResponse);
  }
  r.status = 200;
  r.server_time = milliseconds(10);
  EXPECT_EQ(fcp_proxy(r, ThrottleProfile::mobile_throttled()), milliseconds(160) + Duration(5000));
}

TEST(NetModelTest, Validation) {
  auto p = ThrottleProfile::mobile_throttled();
  EXPECT_NO_THROW(p.validate());
  p.downlink_bps = 0;
  EXPECT_THROW(p.validate(), Error);
  p = ThrottleProfile::mobile_throttled();
  p.rtt = Duration::zero();
  EXPECT_THROW(p.validate(), Error);
  EXPECT_NO_THROW(ThrottleProfile::none().validate());
  EXPECT_TRUE(ThrottleProfile::preset("none").has_value());
  EXPECT_FALSE(ThrottleProfile::preset("fast-3g").has_value());
}

}  // namespace
}  // namespace edgelab
