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

#include "edgelab/error.hpp"

namespace edgelab {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kNotFound: return "NotFound";
    case ErrorCode::kUpstream: return "UpstreamError";
    case ErrorCode::kStaleDeploy: return "StaleDeploy";
    case ErrorCode::kEmptyHistogram: return "EmptyHistogram";
    case ErrorCode::kInvalidResponse: return "InvalidResponse";
    case ErrorCode::kTargetUnreachable: return "TargetUnreachable";
    case ErrorCode::kMixedKinds: return "MixedKinds";
    case ErrorCode::kConfig: return "ConfigError";
    case ErrorCode::kIo: return "IoError";
    case ErrorCode::kPortInUse: return "PortInUse";
  }
  return "Unknown";
}

}  // namespace edgelab
