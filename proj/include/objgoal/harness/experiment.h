// Copyright 2026 The objgoal Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef OBJGOAL_HARNESS_EXPERIMENT_H_
#define OBJGOAL_HARNESS_EXPERIMENT_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "objgoal/agent/ddpg.h"
#include "objgoal/agent/trainer.h"
#include "objgoal/baselines/baselines.h"
#include "objgoal/curriculum/curriculum.h"
#include "objgoal/imaginer/imaginer.h"
#include "objgoal/object/object_policy.h"
#include "objgoal/world/world.h"

namespace objgoal::harness {

// Locomotion policy, dataset and imaginer; trained once per experiment and
// shared by every seed.
struct ObjectStageConfig {
  agent::AgentConfig agent;
  agent::TrainSchedule schedule;
  int dataset_episodes = 1000;
  bool filter_success = true;
  imaginer::ImaginerConfig imaginer;
  std::uint64_t seed = 100;

  nlohmann::json ToJson() const;
};

struct ExperimentConfig {
  std::string env = "PnP-Simple-v1";
  baselines::Algo algo = baselines::Algo::kHer;
  std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};
  agent::TrainSchedule schedule;
  agent::AgentConfig agent;
  curriculum::CurriculumConfig curriculum;
  baselines::RndConfig rnd;
  ObjectStageConfig object_stage;
  std::string output_dir = "runs";
  // Off by default so that metric files are reproducible byte for byte.
  bool record_wall_clock = false;

  // Defaults for `env`, with both discount factors matched to its horizon.
  static ExperimentConfig ForEnv(const std::string& env);

  void Validate() const;
  nlohmann::json ToJson() const;
  // Unknown keys are errors. A missing "gamma" in either agent section is
  // derived from the world horizon.
  static ExperimentConfig FromJson(const nlohmann::json& j);
  static ExperimentConfig Load(const std::filesystem::path& path);
  void Save(const std::filesystem::path& path) const;
};

// 64-bit FNV-1a of the canonical JSON dump, as 16 hex digits.
std::string ConfigHash(const ExperimentConfig& config);

struct ObjectStage {
  std::shared_ptr<agent::Agent> policy;
  std::vector<agent::EpochStats> curve;
  std::vector<object::LocomotionTrajectory> dataset;
  imaginer::ImaginerModel imaginer;
};

ObjectStage RunObjectStage(const world::WorldConfig& world,
                           const ObjectStageConfig& config);

struct EpochRecord {
  int epoch = 0;
  double success_rate = 0.0;
  std::optional<int> k_max;  // FO only
  double wall_clock_s = 0.0;
};

struct RunRecord {
  std::uint64_t seed = 0;
  std::string algo;
  std::string env;
  std::string config_hash;
  std::vector<EpochRecord> epochs;
  std::vector<curriculum::TraceRow> trace;  // FO only
  double wall_clock_s = 0.0;
  bool failed = false;
  std::string error;
};

struct SeedRun {
  RunRecord record;
  std::shared_ptr<agent::Agent> agent;
};

// Trains one seed. FO needs `imagine`; the other algorithms ignore it.
// Module errors propagate.
SeedRun RunSeed(const ExperimentConfig& config, std::uint64_t seed,
                const curriculum::ImagineFn& imagine = nullptr);

struct RunOptions {
  // Per-seed metrics (and FO traces), config.json and imaginer.bin go to
  // output_dir.
  bool write_files = true;
  // Agent checkpoints in output_dir/agent_seed<N>; needs write_files.
  bool save_agents = false;
  // FO reuses this model instead of running the object stage.
  std::optional<imaginer::ImaginerModel> imaginer;
  std::ostream* log = nullptr;
};

// All seeds of `config`; for FO the object stage runs first unless an
// imaginer is supplied. A seed that throws is kept as a failed record and the
// others proceed.
std::vector<RunRecord> RunExperiment(const ExperimentConfig& config,
                                     const RunOptions& options = {});

// Columns: epoch,seed,algo,env,success_rate,k_max,wall_clock_s. k_max is
// empty for non-FO runs.
void WriteMetricsCsv(std::ostream& out, const RunRecord& record);
RunRecord ReadMetricsCsv(std::istream& in);
std::string MetricsFileName(const RunRecord& record);

}  // namespace objgoal::harness

#endif  // OBJGOAL_HARNESS_EXPERIMENT_H_
