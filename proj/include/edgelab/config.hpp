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

#ifndef EDGELAB_CONFIG_HPP_
#define EDGELAB_CONFIG_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "edgelab/bench.hpp"
#include "edgelab/content.hpp"
#include "edgelab/digest.hpp"
#include "edgelab/edge.hpp"
#include "edgelab/netmodel.hpp"

namespace edgelab {

struct VariantConfig {
  std::string name;
  StrategyConfig strategy;
  int port = 0;  // 0: base_port + index

  bool operator==(const VariantConfig&) const = default;
};

struct AuditSettings {
  int runs = 5;
  ResetPolicy reset = ResetPolicy::kPurgeAndCold;
  std::vector<std::string> pages = {"/", "/posts/post-0"};

  bool operator==(const AuditSettings&) const = default;
};

struct BenchSettings {
  BenchConfig load;
  ResetPolicy reset = ResetPolicy::kPurge;

  bool operator==(const BenchSettings&) const = default;
};

// How real-time runs reach the variants.
enum class Transport { kHttp, kInProcess };

std::string_view to_string(Transport t);

struct ExperimentConfig {
  Seed seed;
  std::int64_t post_count = 100;
  WordRange words;
  std::vector<VariantConfig> variants;
  std::string throttle_profile = "mobile-throttled";
  Duration render_overhead = Duration::zero();
  AuditSettings audit;
  BenchSettings bench;
  std::string output_dir = "out";
  std::string host = "127.0.0.1";
  int base_port = 8080;
  int content_port = 0;  // 0 disables the standalone content server
  bool deterministic = false;
  Transport transport = Transport::kHttp;

  bool operator==(const ExperimentConfig&) const = default;

  // ssr / isr / ssg over 100 posts with a 100 ms upstream delay.
  static ExperimentConfig default_preset();

  // Throws Error(kConfig).
  void validate() const;
  ThrottleProfile profile() const;
  int port_for(std::size_t variant_index) const;
  const VariantConfig* find_variant(std::string_view name) const;
};

// Missing keys take default_preset() values; unknown keys are rejected.
// Durations are milliseconds in "*_ms" keys ("ttl_ms": null is infinite),
// except bench.duration_s. Throws Error(kConfig).
ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& cfg);
// Throws Error(kIo) or Error(kConfig).
ExperimentConfig load_config(const std::filesystem::path& file);
// sha256 of the canonical JSON dump, output_dir excluded.
Digest config_digest(const ExperimentConfig& cfg);

// "index" for "/", "post" for post pages, else the path itself.
std::string page_label(std::string_view path);

}  // namespace edgelab

#endif  // EDGELAB_CONFIG_HPP_
