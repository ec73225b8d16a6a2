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

#ifndef EDGELAB_EXPERIMENT_HPP_
#define EDGELAB_EXPERIMENT_HPP_

#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "edgelab/config.hpp"
#include "edgelab/edge.hpp"
#include "edgelab/http.hpp"
#include "edgelab/sim.hpp"
#include "edgelab/ssg.hpp"

namespace edgelab {

using LogFn = std::function<void(std::string_view)>;

std::string tool_version();

inline constexpr std::string_view kManifestFile = "build-manifest.json";
inline constexpr std::string_view kSiteDir = "site";

struct BuildResult {
  SiteBuild build;
  std::set<std::string> rebuilt_paths;
  bool incremental = false;
  std::vector<std::string> written;  // relative to out_dir
  std::vector<std::string> removed;
};

// Generates the posts, rebuilds out_dir/site against the previous export
// when one exists, and rewrites out_dir/build-manifest.json.
BuildResult run_build(const ExperimentConfig& cfg, const std::filesystem::path& out_dir,
                      const LogFn& log = {});

// The build recorded by a previous run_build. nullopt when there is no
// manifest. Throws Error(kIo) when the export does not match its manifest.
std::optional<SiteBuild> load_export(const std::filesystem::path& out_dir);

// One worker per variant, all serving the same build. Deterministic configs
// run on a virtual clock whose scheduler also runs background work.
class Lab {
 public:
  explicit Lab(const ExperimentConfig& cfg);
  Lab(const Lab&) = delete;
  Lab& operator=(const Lab&) = delete;
  ~Lab();

  Clock& clock();
  VirtualClock* virtual_clock() { return vclock_.get(); }
  const std::shared_ptr<const PostList>& posts() const { return posts_; }
  const std::shared_ptr<const SiteBuild>& build() const { return build_; }
  std::size_t size() const { return workers_.size(); }
  const std::shared_ptr<EdgeWorker>& worker(std::size_t i) const { return workers_.at(i); }

  // Finishes pending background work.
  void settle();

  // Serve mode: one listener per variant and, if configured, the content
  // server. Ports follow ExperimentConfig::port_for.
  std::unique_ptr<EdgeServer> make_server() const;

 private:
  ExperimentConfig cfg_;
  std::shared_ptr<const PostList> posts_;
  std::shared_ptr<const SiteBuild> build_;
  std::unique_ptr<VirtualClock> vclock_;
  std::unique_ptr<sim::Scheduler> scheduler_;
  std::vector<std::shared_ptr<EdgeWorker>> workers_;
};

// Audits every (variant, page), then load-tests every variant. Returns the
// summary document that write_outputs consumes.
nlohmann::json run_experiment(const ExperimentConfig& cfg, const LogFn& log = {});

// summary.json plus audit.md, audit.csv, percentiles.md and percentiles.csv.
// Returns the files written.
std::vector<std::filesystem::path> write_outputs(const nlohmann::json& summary,
                                                 const std::filesystem::path& out_dir);

// Regenerates the tables from an existing summary.json. Throws Error(kIo).
std::vector<std::filesystem::path> write_report(const std::filesystem::path& summary_file,
                                                const std::filesystem::path& out_dir);

}  // namespace edgelab

#endif  // EDGELAB_EXPERIMENT_HPP_
