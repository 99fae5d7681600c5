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

#include "objgoal/object/object_policy.h"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

#include "objgoal/error.h"
#include "objgoal/seed.h"
#include "objgoal/world/env.h"

namespace objgoal::object {

agent::Agent TrainObjectPolicy(const world::WorldConfig& world,
                               const agent::AgentConfig& config,
                               const agent::TrainSchedule& schedule,
                               std::uint64_t seed,
                               std::vector<agent::EpochStats>* curve) {
  world::LocomotionEnv env(world);
  agent::Agent agent(env.observation_size(), env.action_size(), config,
                     DeriveSeed(seed, stream::kAgentInit));
  agent::Trainer trainer(env, agent, schedule, seed);
  for (int e = 0; e < schedule.epochs; ++e) {
    agent::EpochStats stats = trainer.RunEpoch({});
    if (curve != nullptr) curve->push_back(stats);
  }
  return agent;
}

agent::Policy GreedyObjectPolicy(double max_step_displacement) {
  if (!(max_step_displacement > 0.0)) {
    throw ConfigError("max_step_displacement must be > 0");
  }
  return [max_step_displacement](std::span<const double> obs,
                                 const world::Vec3& goal, bool,
                                 std::mt19937_64&) {
    std::vector<double> action(world::kObjectActionSize);
    for (int i = 0; i < 3; ++i) {
      action[i] = std::clamp((goal[i] - obs[i]) / max_step_displacement, -1.0, 1.0);
    }
    return action;
  };
}

std::vector<LocomotionTrajectory> GenerateLocomotionDataset(
    const agent::Policy& policy, const world::WorldConfig& world,
    int n_episodes, std::uint64_t seed, bool filter_success) {
  if (n_episodes < 0) throw ConfigError("n_episodes must be >= 0");
  world::LocomotionEnv env(world);
  std::vector<LocomotionTrajectory> out;
  std::mt19937_64 unused(0);  // deterministic rollouts draw nothing
  for (int i = 0; i < n_episodes; ++i) {
    const world::EnvStart start = env.Reset(DeriveSeed(seed, stream::kDataset, i));
    replay::Episode ep = agent::RunEpisode(policy, env, start,
                                           start.goal.position, false, unused);
    if (filter_success && !ep.success()) continue;
    out.push_back({ep.goal, ep.achieved, ep.success()});
  }
  if (n_episodes > 0 && out.empty()) {
    throw Error("no successful locomotion trajectories out of " +
                std::to_string(n_episodes) + " episodes");
  }
  return out;
}

std::vector<LocomotionTrajectory> GenerateLocomotionDataset(
    const agent::Agent& policy, const world::WorldConfig& world,
    int n_episodes, std::uint64_t seed, bool filter_success) {
  return GenerateLocomotionDataset(agent::AsPolicy(policy), world, n_episodes,
                                   seed, filter_success);
}

void WriteDatasetCsv(std::ostream& out,
                     const std::vector<LocomotionTrajectory>& dataset) {
  out << "episode_id,t,ox,oy,oz,gx,gy,gz\n";
  out << std::setprecision(17);
  for (std::size_t e = 0; e < dataset.size(); ++e) {
    const LocomotionTrajectory& traj = dataset[e];
    for (int t = 0; t < traj.path.cols(); ++t) {
      out << e << ',' << t;
      for (int i = 0; i < 3; ++i) out << ',' << traj.path(i, t);
      for (int i = 0; i < 3; ++i) out << ',' << traj.goal[i];
      out << '\n';
    }
  }
}

void SaveDatasetCsv(const std::filesystem::path& path,
                    const std::vector<LocomotionTrajectory>& dataset) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  WriteDatasetCsv(out, dataset);
}

std::vector<LocomotionTrajectory> ReadDatasetCsv(std::istream& in,
                                                 double epsilon) {
  std::string line;
  if (!std::getline(in, line) || line != "episode_id,t,ox,oy,oz,gx,gy,gz") {
    throw Error("dataset CSV: bad header");
  }
  std::vector<LocomotionTrajectory> out;
  std::vector<world::Vec3> points;
  long current = -1;
  world::Vec3 goal = world::Vec3::Zero();
  auto flush = [&] {
    if (points.empty()) return;
    LocomotionTrajectory traj;
    traj.goal = goal;
    traj.path.resize(3, static_cast<Eigen::Index>(points.size()));
    for (std::size_t t = 0; t < points.size(); ++t) traj.path.col(t) = points[t];
    traj.success = world::SparseReward(points.back(), goal, epsilon) == 0.0;
    out.push_back(std::move(traj));
    points.clear();
  };
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string cell;
    std::vector<double> values;
    while (std::getline(fields, cell, ',')) {
      try {
        values.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw Error("dataset CSV line " + std::to_string(line_no) +
                    ": bad number '" + cell + "'");
      }
    }
    if (values.size() != 8) {
      throw Error("dataset CSV line " + std::to_string(line_no) +
                  ": expected 8 fields");
    }
    const long id = static_cast<long>(values[0]);
    const long t = static_cast<long>(values[1]);
    if (id != current) {
      flush();
      current = id;
      goal = world::Vec3(values[5], values[6], values[7]);
    }
    if (t != static_cast<long>(points.size())) {
      throw Error("dataset CSV line " + std::to_string(line_no) +
                  ": steps out of order");
    }
    points.emplace_back(values[2], values[3], values[4]);
  }
  flush();
  return out;
}

std::vector<LocomotionTrajectory> LoadDatasetCsv(
    const std::filesystem::path& path, double epsilon) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path.string());
  return ReadDatasetCsv(in, epsilon);
}

}  // namespace objgoal::object
