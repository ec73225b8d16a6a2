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

#include "edgelab/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "edgelab/error.hpp"

namespace edgelab {
namespace {

using nlohmann::json;

[[noreturn]] void config_error(const std::string& msg) { throw Error(ErrorCode::kConfig, msg); }

Duration from_ms(double ms) { return Duration(std::llround(ms * 1e6)); }
double to_ms(Duration d) { return static_cast<double>(d.count()) / 1e6; }

// Reads typed fields out of one JSON object and rejects keys nobody asked
// for once done() is called.
class ObjectReader {
 public:
  ObjectReader(const json& j, std::string where) : j_(j), where_(std::move(where)) {
    if (!j_.is_object()) config_error(where_ + ": expected an object");
  }

  template <typename T>
  void read(const char* key, T& out) {
    seen_.insert(key);
    const auto it = j_.find(key);
    if (it == j_.end()) return;
    try {
      out = it->template get<T>();
    } catch (const json::exception&) {
      config_error(where_ + "." + key + ": wrong type");
    }
  }

  void read_ms(const char* key, Duration& out) {
    seen_.insert(key);
    const auto it = j_.find(key);
    if (it == j_.end()) return;
    if (!it->is_number()) config_error(where_ + "." + key + ": expected milliseconds");
    out = from_ms(it->get<double>());
  }

  void read_optional_ms(const char* key, std::optional<Duration>& out) {
    seen_.insert(key);
    const auto it = j_.find(key);
    if (it == j_.end()) return;
    if (it->is_null()) {
      out.reset();
      return;
    }
    if (!it->is_number()) config_error(where_ + "." + key + ": expected milliseconds or null");
    out = from_ms(it->get<double>());
  }

  const json* child(const char* key) {
    seen_.insert(key);
    const auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  void done() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!seen_.contains(it.key())) config_error(where_ + ": unknown key \"" + it.key() + "\"");
    }
  }

 private:
  const json& j_;
  std::string where_;
  std::set<std::string> seen_;
};

ResetPolicy reset_from(const std::string& s, const std::string& where) {
  const auto p = parse_reset_policy(s);
  if (!p) config_error(where + ": unknown reset policy \"" + s + "\"");
  return *p;
}

VariantConfig variant_from_json(const json& j, std::size_t index) {
  const std::string where = "variants[" + std::to_string(index) + "]";
  ObjectReader r(j, where);
  VariantConfig v;
  std::string strategy = "STATIC";
  r.read("name", v.name);
  r.read("strategy", strategy);
  r.read("port", v.port);
  r.read_ms("upstream_delay_ms", v.strategy.upstream_delay);
  r.read_optional_ms("ttl_ms", v.strategy.ttl);
  r.read_ms("cold_start_penalty_ms", v.strategy.cold_start_penalty);
  r.read_ms("base_handling_ms", v.strategy.base_handling);
  r.read_ms("kv_read_delay_ms", v.strategy.kv_read_delay);
  r.done();
  const auto s = parse_strategy(strategy);
  if (!s) config_error(where + ".strategy: unknown strategy \"" + strategy + "\"");
  v.strategy.strategy = *s;
  return v;
}

json variant_to_json(const VariantConfig& v) {
  return {{"name", v.name},
          {"strategy", std::string(to_string(v.strategy.strategy))},
          {"port", v.port},
          {"upstream_delay_ms", to_ms(v.strategy.upstream_delay)},
          {"ttl_ms", v.strategy.ttl ? json(to_ms(*v.strategy.ttl)) : json(nullptr)},
          {"cold_start_penalty_ms", to_ms(v.strategy.cold_start_penalty)},
          {"base_handling_ms", to_ms(v.strategy.base_handling)},
          {"kv_read_delay_ms", to_ms(v.strategy.kv_read_delay)}};
}

VariantConfig make_variant(std::string name, Strategy s) {
  VariantConfig v;
  v.name = std::move(name);
  v.strategy.strategy = s;
  return v;
}

}  // namespace

std::string_view to_string(Transport t) { return t == Transport::kHttp ? "http" : "in-process"; }

ExperimentConfig ExperimentConfig::default_preset() {
  ExperimentConfig cfg;
  cfg.variants = {make_variant("ssr", Strategy::kSsr), make_variant("isr", Strategy::kIsr),
                  make_variant("ssg", Strategy::kStatic)};
  return cfg;
}

void ExperimentConfig::validate() const {
  if (post_count < 0) config_error("post_count must be >= 0");
  if (words.min_words < 1 || words.min_words > words.max_words) {
    config_error("word range must satisfy 1 <= min_words <= max_words");
  }
  if (variants.empty()) config_error("at least one variant is required");
  std::set<std::string> names;
  std::set<int> ports;
  for (std::size_t i = 0; i < variants.size(); ++i) {
    const auto& v = variants[i];
    if (v.name.empty()) config_error("variant names must be non-empty");
    if (!names.insert(v.name).second) config_error("duplicate variant name \"" + v.name + "\"");
    try {
      v.strategy.validate();
    } catch (const Error& e) {
      config_error("variant \"" + v.name + "\": " + e.what());
    }
    if (v.port < 0 || v.port > 65535) config_error("variant \"" + v.name + "\": bad port");
    const int port = port_for(i);
    if (port != 0 && !ports.insert(port).second) {
      config_error("variant \"" + v.name + "\": port " + std::to_string(port) + " used twice");
    }
  }
  if (base_port < 0 || base_port > 65535) config_error("base_port out of range");
  if (content_port < 0 || content_port > 65535) config_error("content_port out of range");
  if (content_port != 0 && ports.contains(content_port)) config_error("content_port clashes with a variant port");
  if (!ThrottleProfile::preset(throttle_profile)) {
    config_error("unknown throttle profile \"" + throttle_profile + "\"");
  }
  if (render_overhead < Duration::zero()) config_error("render_overhead_ms must be >= 0");
  if (audit.runs < 2) config_error("audit.runs must be >= 2");
  for (const auto& p : audit.pages) {
    if (p.empty() || p.front() != '/') config_error("audit pages must start with '/'");
  }
  try {
    bench.load.validate();
  } catch (const Error& e) {
    config_error(std::string("bench: ") + e.what());
  }
}

ThrottleProfile ExperimentConfig::profile() const {
  auto p = ThrottleProfile::preset(throttle_profile);
  if (!p) config_error("unknown throttle profile \"" + throttle_profile + "\"");
  p->render_overhead = render_overhead;
  return *p;
}

int ExperimentConfig::port_for(std::size_t variant_index) const {
  const int explicit_port = variants.at(variant_index).port;
  if (explicit_port != 0) return explicit_port;
  return base_port == 0 ? 0 : base_port + static_cast<int>(variant_index);
}

const VariantConfig* ExperimentConfig::find_variant(std::string_view name) const {
  for (const auto& v : variants) {
    if (v.name == name) return &v;
  }
  return nullptr;
}

ExperimentConfig config_from_json(const json& j) {
  ExperimentConfig cfg = ExperimentConfig::default_preset();
  ObjectReader r(j, "config");
  r.read("seed", cfg.seed.value);
  r.read("post_count", cfg.post_count);
  r.read("min_words", cfg.words.min_words);
  r.read("max_words", cfg.words.max_words);
  r.read("throttle_profile", cfg.throttle_profile);
  r.read_ms("render_overhead_ms", cfg.render_overhead);
  r.read("output_dir", cfg.output_dir);
  r.read("host", cfg.host);
  r.read("base_port", cfg.base_port);
  r.read("content_port", cfg.content_port);
  r.read("deterministic", cfg.deterministic);
  std::string transport = std::string(to_string(cfg.transport));
  r.read("transport", transport);
  if (transport == "http") {
    cfg.transport = Transport::kHttp;
  } else if (transport == "in-process") {
    cfg.transport = Transport::kInProcess;
  } else {
    config_error("transport must be \"http\" or \"in-process\"");
  }

  if (const json* vs = r.child("variants")) {
    if (!vs->is_array()) config_error("variants: expected an array");
    cfg.variants.clear();
    for (std::size_t i = 0; i < vs->size(); ++i) cfg.variants.push_back(variant_from_json((*vs)[i], i));
  }
  if (const json* a = r.child("audit")) {
    ObjectReader ar(*a, "audit");
    std::string reset(to_string(cfg.audit.reset));
    ar.read("runs", cfg.audit.runs);
    ar.read("reset", reset);
    ar.read("pages", cfg.audit.pages);
    ar.done();
    cfg.audit.reset = reset_from(reset, "audit.reset");
  }
  if (const json* b = r.child("bench")) {
    ObjectReader br(*b, "bench");
    std::string reset(to_string(cfg.bench.reset));
    double duration_s = std::chrono::duration<double>(cfg.bench.load.duration).count();
    br.read("duration_s", duration_s);
    br.read("connections", cfg.bench.load.connections);
    br.read("target_path", cfg.bench.load.target_path);
    br.read("warmup_requests", cfg.bench.load.warmup_requests);
    br.read("discard_first_second", cfg.bench.load.discard_first_second);
    br.read("reset", reset);
    br.done();
    cfg.bench.reset = reset_from(reset, "bench.reset");
    cfg.bench.load.duration = Duration(std::llround(duration_s * 1e9));
  }
  r.done();
  cfg.validate();
  return cfg;
}

json config_to_json(const ExperimentConfig& cfg) {
  json variants = json::array();
  for (const auto& v : cfg.variants) variants.push_back(variant_to_json(v));
  return {{"seed", cfg.seed.value},
          {"post_count", cfg.post_count},
          {"min_words", cfg.words.min_words},
          {"max_words", cfg.words.max_words},
          {"throttle_profile", cfg.throttle_profile},
          {"render_overhead_ms", to_ms(cfg.render_overhead)},
          {"output_dir", cfg.output_dir},
          {"host", cfg.host},
          {"base_port", cfg.base_port},
          {"content_port", cfg.content_port},
          {"deterministic", cfg.deterministic},
          {"transport", std::string(to_string(cfg.transport))},
          {"variants", variants},
          {"audit",
           {{"runs", cfg.audit.runs},
            {"reset", std::string(to_string(cfg.audit.reset))},
            {"pages", cfg.audit.pages}}},
          {"bench",
           {{"duration_s", std::chrono::duration<double>(cfg.bench.load.duration).count()},
            {"connections", cfg.bench.load.connections},
            {"target_path", cfg.bench.load.target_path},
            {"warmup_requests", cfg.bench.load.warmup_requests},
            {"discard_first_second", cfg.bench.load.discard_first_second},
            {"reset", std::string(to_string(cfg.bench.reset))}}}};
}

ExperimentConfig load_config(const std::filesystem::path& file) {
  std::ifstream is(file);
  if (!is) throw Error(ErrorCode::kIo, "cannot read config " + file.string());
  std::stringstream ss;
  ss << is.rdbuf();
  json j;
  try {
    j = json::parse(ss.str());
  } catch (const json::parse_error& e) {
    config_error(file.string() + ": " + e.what());
  }
  return config_from_json(j);
}

Digest config_digest(const ExperimentConfig& cfg) {
  // Where results go does not change what is measured.
  auto j = config_to_json(cfg);
  j.erase("output_dir");
  return sha256(j.dump());
}

std::string page_label(std::string_view path) {
  if (path == "/") return "index";
  if (path.starts_with("/posts/")) return "post";
  return std::string(path);
}

}  // namespace edgelab
