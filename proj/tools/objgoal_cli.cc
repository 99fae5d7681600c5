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


// Command-line driver for the object stage, the robot learners and the
// evaluation/plotting utilities. Run with --help for the subcommands.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "objgoal/agent/ddpg.h"
#include "objgoal/agent/trainer.h"
#include "objgoal/baselines/baselines.h"
#include "objgoal/error.h"
#include "objgoal/harness/aggregate.h"
#include "objgoal/harness/experiment.h"
#include "objgoal/imaginer/imaginer.h"
#include "objgoal/object/object_policy.h"
#include "objgoal/seed.h"
#include "objgoal/world/env.h"
#include "objgoal/world/suite.h"

namespace {

namespace fs = std::filesystem;
using objgoal::harness::ExperimentConfig;

constexpr int kUsageError = 2;

struct Common {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string env;
};

// The --env override is applied before parsing so that horizon-derived
// defaults follow the overridden world.
ExperimentConfig LoadConfig(const Common& common) {
  nlohmann::json j = nlohmann::json::object();
  if (!common.config_path.empty()) {
    std::ifstream in(common.config_path);
    if (!in) throw objgoal::ConfigError("cannot read " + common.config_path);
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw objgoal::ConfigError(common.config_path + ": " + e.what());
    }
  }
  if (!common.env.empty()) j["env"] = common.env;
  return ExperimentConfig::FromJson(j);
}

std::string OutOr(const Common& common, const std::string& fallback) {
  return common.out.empty() ? fallback : common.out;
}

void EnsureParent(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
}

int TrainObject(const Common& common) {
  ExperimentConfig c = LoadConfig(common);
  if (common.seed) c.object_stage.seed = *common.seed;
  const fs::path out = OutOr(common, "object_policy");
  std::vector<objgoal::agent::EpochStats> curve;
  objgoal::agent::Agent agent = objgoal::object::TrainObjectPolicy(
      objgoal::world::FindWorld(c.env), c.object_stage.agent,
      c.object_stage.schedule, c.object_stage.seed, &curve);
  agent.Save(out);
  std::ofstream csv(out / "learning_curve.csv");
  objgoal::agent::WriteLearningCurveCsv(csv, curve);
  std::cout << "object policy for " << c.env << " saved to " << out.string()
            << "; final success "
            << (curve.empty() ? 0.0 : curve.back().success_rate) << '\n';
  return 0;
}

int GenDataset(const Common& common, const std::string& agent_dir, int episodes) {
  ExperimentConfig c = LoadConfig(common);
  if (common.seed) c.object_stage.seed = *common.seed;
  if (episodes > 0) c.object_stage.dataset_episodes = episodes;
  const objgoal::world::WorldConfig world = objgoal::world::FindWorld(c.env);
  const objgoal::agent::Agent agent = objgoal::agent::Agent::Load(agent_dir);
  const auto dataset = objgoal::object::GenerateLocomotionDataset(
      agent, world, c.object_stage.dataset_episodes,
      objgoal::DeriveSeed(c.object_stage.seed, objgoal::stream::kDataset),
      c.object_stage.filter_success);
  const fs::path out = OutOr(common, "dataset.csv");
  EnsureParent(out);
  objgoal::object::SaveDatasetCsv(out, dataset);
  std::cout << dataset.size() << " trajectories written to " << out.string() << '\n';
  return 0;
}

int TrainImaginer(const Common& common, const std::string& dataset_path) {
  ExperimentConfig c = LoadConfig(common);
  if (common.seed) c.object_stage.seed = *common.seed;
  const objgoal::world::WorldConfig world = objgoal::world::FindWorld(c.env);
  const auto dataset = objgoal::object::LoadDatasetCsv(dataset_path, world.epsilon);
  const auto model = objgoal::imaginer::TrainImaginer(
      objgoal::imaginer::BuildTrainingSet(dataset, world.horizon), world.horizon,
      world.ObjectBounds(), c.object_stage.imaginer,
      objgoal::DeriveSeed(c.object_stage.seed, objgoal::stream::kImaginer));
  const fs::path out = OutOr(common, "imaginer.bin");
  EnsureParent(out);
  objgoal::imaginer::SaveImaginer(out, model);
  std::cout << "imaginer: train mse " << model.train_mse << ", holdout mse "
            << model.holdout_mse << ", epochs " << model.epochs_trained
            << "; saved to " << out.string() << '\n';
  return 0;
}

std::vector<objgoal::harness::NamedAggregate> AggregateByName(
    const std::vector<objgoal::harness::RunRecord>& records) {
  std::map<std::string, std::vector<std::vector<double>>> curves;
  for (const auto& r : records) {
    if (r.failed || r.epochs.empty()) continue;
    std::vector<double> curve;
    for (const auto& e : r.epochs) curve.push_back(e.success_rate);
    curves[r.env + "/" + r.algo].push_back(std::move(curve));
  }
  std::vector<objgoal::harness::NamedAggregate> series;
  for (const auto& [name, c] : curves) {
    series.push_back({name, objgoal::harness::Aggregate(c)});
  }
  return series;
}

void WritePlot(const std::vector<objgoal::harness::NamedAggregate>& series,
               const fs::path& svg_path, const std::string& title) {
  EnsureParent(svg_path);
  std::ofstream svg(svg_path);
  if (!svg) throw objgoal::Error("cannot write " + svg_path.string());
  svg << objgoal::harness::RenderSvg(series, {title});
  fs::path csv_path = svg_path;
  csv_path.replace_extension(".csv");
  std::ofstream csv(csv_path);
  objgoal::harness::WriteAggregateCsv(csv, series);
}

int TrainRobot(const Common& common, const std::string& algo,
               const std::string& imaginer_path) {
  ExperimentConfig c = LoadConfig(common);
  if (!algo.empty()) c.algo = objgoal::baselines::ParseAlgo(algo);
  if (common.seed) c.seeds = {*common.seed};
  if (!common.out.empty()) c.output_dir = common.out;
  objgoal::harness::RunOptions options;
  options.save_agents = true;
  options.log = &std::cout;
  if (!imaginer_path.empty()) {
    options.imaginer = objgoal::imaginer::LoadImaginer(imaginer_path);
  }
  const auto records = objgoal::harness::RunExperiment(c, options);
  const auto series = AggregateByName(records);
  if (!series.empty()) {
    WritePlot(series, fs::path(c.output_dir) / "curves.svg", c.env);
  }
  int failed = 0;
  for (const auto& r : records) failed += r.failed;
  std::cout << records.size() - failed << "/" << records.size()
            << " seeds finished; results in " << c.output_dir << '\n';
  return failed == 0 ? 0 : 1;
}

int Evaluate(const Common& common, const std::string& agent_dir, int rollouts) {
  ExperimentConfig c = LoadConfig(common);
  const std::uint64_t seed = common.seed.value_or(c.seeds.front());
  if (rollouts <= 0) rollouts = c.schedule.eval_rollouts;
  const objgoal::agent::Agent agent = objgoal::agent::Agent::Load(agent_dir);
  objgoal::world::ManipulationEnv env(objgoal::world::FindWorld(c.env));
  const double success = objgoal::agent::EvaluateSuccess(
      objgoal::agent::AsPolicy(agent), env, rollouts,
      objgoal::DeriveSeed(seed, objgoal::stream::kEvaluation));
  std::cout << c.env << ": success rate " << success << " over " << rollouts
            << " rollouts\n";
  if (!common.out.empty()) {
    EnsureParent(common.out);
    std::ofstream out(common.out);
    out << "env,rollouts,success_rate\n" << c.env << ',' << rollouts << ','
        << success << '\n';
  }
  return 0;
}

int Plot(const Common& common, const std::vector<std::string>& inputs,
         const std::string& title) {
  std::vector<objgoal::harness::RunRecord> records;
  for (const std::string& path : inputs) {
    std::ifstream in(path);
    if (!in) throw objgoal::Error("cannot read " + path);
    std::string header;
    std::getline(in, header);
    if (header != "epoch,seed,algo,env,success_rate,k_max,wall_clock_s") {
      std::cerr << "skipping " << path << " (not a metrics file)\n";
      continue;
    }
    in.seekg(0);
    records.push_back(objgoal::harness::ReadMetricsCsv(in));
  }
  const auto series = AggregateByName(records);
  if (series.empty()) throw objgoal::Error("no epochs in the given metrics files");
  const fs::path out = OutOr(common, "curves.svg");
  WritePlot(series, out, title);
  std::cout << series.size() << " series plotted to " << out.string() << '\n';
  return 0;
}

// Trains plain HER on both PnP-Simple versions and tests each policy on both.
int ReproV1V2(const Common& common) {
  ExperimentConfig c = LoadConfig(common);
  const std::uint64_t seed = common.seed.value_or(c.seeds.front());
  const std::vector<std::string> versions = {"PnP-Simple-v1", "PnP-Simple-v2"};
  const fs::path out = OutOr(common, "repro_v1v2.csv");
  EnsureParent(out);
  std::ofstream csv(out);
  if (!csv) throw objgoal::Error("cannot write " + out.string());
  csv << "trained_on,tested_on_PnP-Simple-v1,tested_on_PnP-Simple-v2\n";
  for (const std::string& train_env : versions) {
    const objgoal::world::WorldConfig world = objgoal::world::FindWorld(train_env);
    const objgoal::baselines::BaselineRun run = objgoal::baselines::TrainBaseline(
        objgoal::baselines::Algo::kHer, world, c.agent, c.schedule, c.rnd, seed);
    csv << train_env;
    for (const std::string& test_env : versions) {
      objgoal::world::ManipulationEnv env(objgoal::world::FindWorld(test_env));
      const double success = objgoal::agent::EvaluateSuccess(
          objgoal::agent::AsPolicy(run.agent), env, c.schedule.eval_rollouts,
          objgoal::DeriveSeed(seed, objgoal::stream::kEvaluation, 1u << 20));
      csv << ',' << success;
      std::cout << "trained on " << train_env << ", tested on " << test_env
                << ": " << success << '\n';
    }
    csv << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Object-following curriculum for goal-conditioned manipulation"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("--config", common.config_path, "Experiment config (JSON)")
      ->check(CLI::ExistingFile);
  app.add_option("--seed", common.seed, "Seed override");
  app.add_option("--out", common.out, "Output file or directory");
  app.add_option("--env", common.env, "World name override")
      ->check(CLI::IsMember(objgoal::world::WorldNames()));

  auto* train_object =
      app.add_subcommand("train-object", "Train the object locomotion policy");

  std::string agent_dir;
  int episodes = 0;
  auto* gen_dataset =
      app.add_subcommand("gen-dataset", "Roll out a locomotion policy into a dataset CSV");
  gen_dataset->add_option("--agent", agent_dir, "Locomotion policy checkpoint")
      ->required()
      ->check(CLI::ExistingDirectory);
  gen_dataset->add_option("--episodes", episodes, "Episodes (default from config)");

  std::string dataset_path;
  auto* train_imaginer =
      app.add_subcommand("train-imaginer", "Fit the goal imaginer to a dataset CSV");
  train_imaginer->add_option("--dataset", dataset_path, "Dataset CSV")
      ->required()
      ->check(CLI::ExistingFile);

  std::string algo;
  std::string imaginer_path;
  auto* train_robot = app.add_subcommand(
      "train-robot", "Train manipulation agents for every configured seed");
  train_robot->add_option("--algo", algo, "Learner")
      ->check(CLI::IsMember({"her", "shaped", "rnd", "fo"}));
  train_robot->add_option("--imaginer", imaginer_path,
                          "Pretrained imaginer for fo (skips the object stage)")
      ->check(CLI::ExistingFile);

  int rollouts = 0;
  std::string eval_agent;
  auto* evaluate = app.add_subcommand(
      "evaluate", "Deterministic rollouts against original goals");
  evaluate->add_option("--agent", eval_agent, "Agent checkpoint")
      ->required()
      ->check(CLI::ExistingDirectory);
  evaluate->add_option("--rollouts", rollouts, "Rollouts (default from config)");

  std::vector<std::string> inputs;
  std::string title;
  auto* plot = app.add_subcommand(
      "plot", "Median and interquartile curves from metrics CSVs");
  plot->add_option("metrics", inputs, "Metrics CSV files")
      ->required()
      ->check(CLI::ExistingFile);
  plot->add_option("--title", title, "Plot title");

  auto* repro = app.add_subcommand(
      "repro-v1v2", "Cross-evaluate HER trained on PnP-Simple-v1 and v2");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (*train_object) return TrainObject(common);
    if (*gen_dataset) return GenDataset(common, agent_dir, episodes);
    if (*train_imaginer) return TrainImaginer(common, dataset_path);
    if (*train_robot) return TrainRobot(common, algo, imaginer_path);
    if (*evaluate) return Evaluate(common, eval_agent, rollouts);
    if (*plot) return Plot(common, inputs, title);
    if (*repro) return ReproV1V2(common);
  } catch (const objgoal::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return kUsageError;
}
