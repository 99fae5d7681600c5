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

#ifndef OBJGOAL_OBJECT_OBJECT_POLICY_H_
#define OBJGOAL_OBJECT_OBJECT_POLICY_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include <Eigen/Core>

#include "objgoal/agent/ddpg.h"
#include "objgoal/agent/trainer.h"
#include "objgoal/world/world.h"

namespace objgoal::object {

// One locomotion rollout: the object path o_1 ... o_{T+1} (3 x (T+1)).
struct LocomotionTrajectory {
  world::Vec3 goal = world::Vec3::Zero();
  Eigen::Matrix3Xd path;
  bool success = false;

  int horizon() const { return static_cast<int>(path.cols()) - 1; }
};

// DDPG+HER on the locomotion MDP of `world`, with the sparse reward.
// Appends one EpochStats per epoch to `curve` when given.
agent::Agent TrainObjectPolicy(const world::WorldConfig& world,
                               const agent::AgentConfig& config,
                               const agent::TrainSchedule& schedule,
                               std::uint64_t seed,
                               std::vector<agent::EpochStats>* curve = nullptr);

// Moves straight at the goal, one clipped step at a time. Solves any
// obstacle-free locomotion task.
agent::Policy GreedyObjectPolicy(double max_step_displacement);

// `n_episodes` deterministic rollouts from fresh resets (episode i is reset
// with a seed derived from `seed` and i). With `filter_success`, only
// trajectories ending within epsilon of their goal are kept; it is an error
// if none survive out of a non-zero number of episodes.
std::vector<LocomotionTrajectory> GenerateLocomotionDataset(
    const agent::Policy& policy, const world::WorldConfig& world,
    int n_episodes, std::uint64_t seed, bool filter_success = true);
std::vector<LocomotionTrajectory> GenerateLocomotionDataset(
    const agent::Agent& policy, const world::WorldConfig& world,
    int n_episodes, std::uint64_t seed, bool filter_success = true);

// CSV with header episode_id,t,ox,oy,oz,gx,gy,gz; t runs 0..T. The success
// flag is not stored; ReadDatasetCsv recomputes it from the final position.
void WriteDatasetCsv(std::ostream& out,
                     const std::vector<LocomotionTrajectory>& dataset);
void SaveDatasetCsv(const std::filesystem::path& path,
                    const std::vector<LocomotionTrajectory>& dataset);
std::vector<LocomotionTrajectory> ReadDatasetCsv(std::istream& in,
                                                 double epsilon);
std::vector<LocomotionTrajectory> LoadDatasetCsv(
    const std::filesystem::path& path, double epsilon);

}  // namespace objgoal::object

#endif  // OBJGOAL_OBJECT_OBJECT_POLICY_H_
