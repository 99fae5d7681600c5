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


#include "objgoal/harness/experiment.h"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "objgoal/error.h"
#include "objgoal/seed.h"
#include "objgoal/world/config_io.h"
#include "objgoal/world/env.h"
#include "objgoal/world/suite.h"

namespace objgoal::harness {

using nlohmann::json;

namespace {

int Horizon(const std::string& env) { return world::FindWorld(env).horizon; }

agent::AgentConfig AgentFromJson(const json& j, int horizon) {
  agent::AgentConfig c = agent::AgentConfig::FromJson(j);
  if (!j.contains("gamma")) {
    c.gamma = agent::AgentConfig::GammaForHorizon(horizon);
    c.Validate();
  }
  return c;
}

template <typename T>
void Get(const json& j, const char* key, T& field, const std::string& context) {
  if (!j.contains(key)) return;
  try {
    field = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(context + ": bad value for '" + key + "': " + e.what());
  }
}

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

}  // namespace

json ObjectStageConfig::ToJson() const {
  return {{"agent", agent.ToJson()},
          {"schedule", schedule.ToJson()},
          {"dataset_episodes", dataset_episodes},
          {"filter_success", filter_success},
          {"imaginer", imaginer.ToJson()},
          {"seed", seed}};
}

ExperimentConfig ExperimentConfig::ForEnv(const std::string& env) {
  ExperimentConfig c;
  c.env = env;
  const double gamma = agent::AgentConfig::GammaForHorizon(Horizon(env));
  c.agent.gamma = gamma;
  c.object_stage.agent.gamma = gamma;
  return c;
}

void ExperimentConfig::Validate() const {
  world::FindWorld(env);
  if (seeds.empty()) throw ConfigError("experiment needs at least one seed");
  schedule.Validate();
  agent.Validate();
  curriculum.Validate();
  rnd.Validate();
  object_stage.agent.Validate();
  object_stage.schedule.Validate();
  object_stage.imaginer.Validate();
  if (object_stage.dataset_episodes < 1) {
    throw ConfigError("object_stage.dataset_episodes must be >= 1");
  }
  if (output_dir.empty()) throw ConfigError("output_dir must not be empty");
}

json ExperimentConfig::ToJson() const {
  return {{"env", env},
          {"algo", baselines::AlgoName(algo)},
          {"seeds", seeds},
          {"schedule", schedule.ToJson()},
          {"agent", agent.ToJson()},
          {"curriculum", curriculum.ToJson()},
          {"rnd", rnd.ToJson()},
          {"object_stage", object_stage.ToJson()},
          {"output_dir", output_dir},
          {"record_wall_clock", record_wall_clock}};
}

ExperimentConfig ExperimentConfig::FromJson(const json& j) {
  if (!j.is_object()) throw ConfigError("experiment config must be an object");
  world::RejectUnknownKeys(j,
                           {"env", "algo", "seeds", "schedule", "agent",
                            "curriculum", "rnd", "object_stage", "output_dir",
                            "record_wall_clock"},
                           "experiment config");
  std::string env = "PnP-Simple-v1";
  Get(j, "env", env, "experiment config");
  ExperimentConfig c = ForEnv(env);
  const int horizon = Horizon(env);
  if (j.contains("algo")) {
    if (!j.at("algo").is_string()) throw ConfigError("'algo' must be a string");
    c.algo = baselines::ParseAlgo(j.at("algo").get<std::string>());
  }
  Get(j, "seeds", c.seeds, "experiment config");
  if (j.contains("schedule")) c.schedule = agent::TrainSchedule::FromJson(j.at("schedule"));
  if (j.contains("agent")) c.agent = AgentFromJson(j.at("agent"), horizon);
  if (j.contains("curriculum")) {
    c.curriculum = curriculum::CurriculumConfig::FromJson(j.at("curriculum"));
  }
  if (j.contains("rnd")) c.rnd = baselines::RndConfig::FromJson(j.at("rnd"));
  if (j.contains("object_stage")) {
    const json& o = j.at("object_stage");
    if (!o.is_object()) throw ConfigError("object_stage must be an object");
    world::RejectUnknownKeys(o,
                             {"agent", "schedule", "dataset_episodes",
                              "filter_success", "imaginer", "seed"},
                             "object_stage");
    if (o.contains("agent")) c.object_stage.agent = AgentFromJson(o.at("agent"), horizon);
    if (o.contains("schedule")) {
      c.object_stage.schedule = agent::TrainSchedule::FromJson(o.at("schedule"));
    }
    Get(o, "dataset_episodes", c.object_stage.dataset_episodes, "object_stage");
    Get(o, "filter_success", c.object_stage.filter_success, "object_stage");
    Get(o, "seed", c.object_stage.seed, "object_stage");
    if (o.contains("imaginer")) {
      c.object_stage.imaginer = imaginer::ImaginerConfig::FromJson(o.at("imaginer"));
    }
  }
  Get(j, "output_dir", c.output_dir, "experiment config");
  Get(j, "record_wall_clock", c.record_wall_clock, "experiment config");
  c.Validate();
  return c;
}

ExperimentConfig ExperimentConfig::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return FromJson(j);
}

void ExperimentConfig::Save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << ToJson().dump(2) << '\n';
}

std::string ConfigHash(const ExperimentConfig& config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : config.ToJson().dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ObjectStage RunObjectStage(const world::WorldConfig& world,
                           const ObjectStageConfig& config) {
  ObjectStage stage;
  stage.policy = std::make_shared<agent::Agent>(object::TrainObjectPolicy(
      world, config.agent, config.schedule, config.seed, &stage.curve));
  stage.dataset = object::GenerateLocomotionDataset(
      *stage.policy, world, config.dataset_episodes,
      DeriveSeed(config.seed, stream::kDataset), config.filter_success);
  stage.imaginer = imaginer::TrainImaginer(
      imaginer::BuildTrainingSet(stage.dataset, world.horizon), world.horizon,
      world.ObjectBounds(), config.imaginer,
      DeriveSeed(config.seed, stream::kImaginer));
  return stage;
}

SeedRun RunSeed(const ExperimentConfig& config, std::uint64_t seed,
                const curriculum::ImagineFn& imagine) {
  const world::WorldConfig world = world::FindWorld(config.env);
  const auto start = Clock::now();
  SeedRun run;
  run.record.seed = seed;
  run.record.algo = baselines::AlgoName(config.algo);
  run.record.env = config.env;
  run.record.config_hash = ConfigHash(config);

  world::ManipulationEnv env(world);
  const agent::AgentConfig agent_config =
      baselines::AdjustAgentConfig(config.algo, world, config.agent);
  run.agent = std::make_shared<agent::Agent>(
      env.observation_size(), env.action_size(), agent_config,
      DeriveSeed(seed, stream::kAgentInit));
  agent::Trainer trainer(env, *run.agent, config.schedule, seed);

  agent::TrainHooks hooks;
  std::unique_ptr<curriculum::FoCurriculum> fo;
  std::unique_ptr<baselines::RndModel> rnd;
  switch (config.algo) {
    case baselines::Algo::kHer:
      break;
    case baselines::Algo::kShaped:
      hooks.reward_fn = baselines::ShapedRewardFn();
      break;
    case baselines::Algo::kRnd:
      rnd = std::make_unique<baselines::RndModel>(
          env.observation_size(), config.rnd, DeriveSeed(seed, stream::kBonus));
      hooks.bonus = baselines::RndBonusHook(*rnd, *run.agent);
      break;
    case baselines::Algo::kFo:
      if (!imagine) throw ConfigError("fo needs an imaginer");
      fo = std::make_unique<curriculum::FoCurriculum>(world, imagine,
                                                      config.curriculum, seed);
      hooks = fo->Hooks(*run.agent);
      break;
  }

  for (int e = 0; e < config.schedule.epochs; ++e) {
    const agent::EpochStats stats = trainer.RunEpoch(hooks);
    EpochRecord rec;
    rec.epoch = stats.epoch;
    rec.success_rate = stats.success_rate;
    if (fo) {
      rec.k_max = fo->state().k_max();
      run.record.trace.push_back({stats.epoch, fo->state().k_max(),
                                  fo->state().window_success_rate(),
                                  stats.imagined_fraction});
    }
    if (config.record_wall_clock) rec.wall_clock_s = Seconds(start);
    run.record.epochs.push_back(rec);
  }
  if (config.record_wall_clock) run.record.wall_clock_s = Seconds(start);
  return run;
}

std::string MetricsFileName(const RunRecord& record) {
  return record.env + "_" + record.algo + "_seed" + std::to_string(record.seed) +
         ".csv";
}

std::vector<RunRecord> RunExperiment(const ExperimentConfig& config,
                                     const RunOptions& options) {
  const bool write_files = options.write_files;
  std::ostream* log = options.log;
  config.Validate();
  const world::WorldConfig world = world::FindWorld(config.env);
  const std::filesystem::path dir(config.output_dir);
  if (write_files) {
    std::filesystem::create_directories(dir);
    config.Save(dir / "config.json");
  }
  std::optional<imaginer::ImaginerModel> model = options.imaginer;
  std::string stage_error;
  if (config.algo == baselines::Algo::kFo && !model) {
    try {
      ObjectStage stage = RunObjectStage(world, config.object_stage);
      if (log) {
        *log << "object stage: final success "
             << (stage.curve.empty() ? 0.0 : stage.curve.back().success_rate)
             << ", dataset " << stage.dataset.size() << ", imaginer holdout mse "
             << stage.imaginer.holdout_mse << '\n';
      }
      if (write_files) {
        imaginer::SaveImaginer(dir / "imaginer.bin", stage.imaginer);
      }
      model = std::move(stage.imaginer);
    } catch (const Error& e) {
      stage_error = std::string("object stage: ") + e.what();
    }
  }
  std::vector<RunRecord> records;
  for (std::uint64_t seed : config.seeds) {
    RunRecord record;
    try {
      if (!stage_error.empty()) throw Error(stage_error);
      SeedRun run = RunSeed(config, seed,
                            model ? curriculum::AsImagineFn(*model)
                                  : curriculum::ImagineFn());
      if (write_files && options.save_agents) {
        run.agent->Save(dir / ("agent_seed" + std::to_string(seed)));
      }
      record = std::move(run.record);
    } catch (const Error& e) {
      record.seed = seed;
      record.algo = baselines::AlgoName(config.algo);
      record.env = config.env;
      record.config_hash = ConfigHash(config);
      record.failed = true;
      record.error = e.what();
    }
    if (log) {
      *log << "seed " << seed << ": "
           << (record.failed ? "FAILED " + record.error
                             : "final success " +
                                   std::to_string(record.epochs.empty()
                                                      ? 0.0
                                                      : record.epochs.back().success_rate))
           << '\n';
    }
    if (write_files) {
      const std::filesystem::path path = dir / MetricsFileName(record);
      if (record.failed) {
        std::ofstream(path.string() + ".failed") << record.error << '\n';
      } else {
        std::ofstream out(path);
        if (!out) throw Error("cannot write " + path.string());
        WriteMetricsCsv(out, record);
        if (!record.trace.empty()) {
          std::ofstream trace(dir / (record.env + "_fo_trace_seed" +
                                     std::to_string(seed) + ".csv"));
          curriculum::WriteTraceCsv(trace, record.trace);
        }
      }
    }
    records.push_back(std::move(record));
  }
  return records;
}

void WriteMetricsCsv(std::ostream& out, const RunRecord& record) {
  out << "epoch,seed,algo,env,success_rate,k_max,wall_clock_s\n";
  out << std::setprecision(17);
  for (const EpochRecord& e : record.epochs) {
    out << e.epoch << ',' << record.seed << ',' << record.algo << ','
        << record.env << ',' << e.success_rate << ',';
    if (e.k_max) out << *e.k_max;
    out << ',' << e.wall_clock_s << '\n';
  }
}

RunRecord ReadMetricsCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) ||
      line != "epoch,seed,algo,env,success_rate,k_max,wall_clock_s") {
    throw Error("metrics CSV: bad header");
  }
  RunRecord record;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream fields(line);
    std::string cell;
    while (std::getline(fields, cell, ',')) cells.push_back(cell);
    if (cells.size() == 6) cells.emplace_back();  // trailing empty field
    if (cells.size() != 7) {
      throw Error("metrics CSV line " + std::to_string(line_no) +
                  ": expected 7 fields");
    }
    try {
      EpochRecord e;
      e.epoch = std::stoi(cells[0]);
      record.seed = std::stoull(cells[1]);
      record.algo = cells[2];
      record.env = cells[3];
      e.success_rate = std::stod(cells[4]);
      if (!cells[5].empty()) e.k_max = std::stoi(cells[5]);
      e.wall_clock_s = cells[6].empty() ? 0.0 : std::stod(cells[6]);
      if (!(e.success_rate >= 0.0 && e.success_rate <= 1.0)) {
        throw Error("success rate outside [0, 1]");
      }
      record.epochs.push_back(e);
    } catch (const std::exception& ex) {
      throw Error("metrics CSV line " + std::to_string(line_no) + ": " + ex.what());
    }
  }
  return record;
}

}  // namespace objgoal::harness
