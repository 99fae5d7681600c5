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

#ifndef OBJGOAL_AGENT_TRAINER_H_
#define OBJGOAL_AGENT_TRAINER_H_

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <random>
#include <vector>

#include <Eigen/Core>

#include "json.hpp"
#include "objgoal/agent/ddpg.h"
#include "objgoal/replay/replay_buffer.h"
#include "objgoal/world/env.h"

namespace objgoal::agent {

// An epoch is `cycles_per_epoch` cycles; a cycle collects
// `episodes_per_cycle` exploratory episodes, runs `updates_per_cycle`
// minibatch updates and then blends the target networks once.
struct TrainSchedule {
  int epochs = 50;
  int cycles_per_epoch = 10;
  int episodes_per_cycle = 10;
  int updates_per_cycle = 40;
  int eval_rollouts = 50;
  int buffer_episodes = 10000;

  int episodes_per_epoch() const { return cycles_per_epoch * episodes_per_cycle; }
  int updates_per_epoch() const { return cycles_per_epoch * updates_per_cycle; }

  void Validate() const;
  nlohmann::json ToJson() const;
  static TrainSchedule FromJson(const nlohmann::json& j);
  bool operator==(const TrainSchedule&) const = default;
};

struct GoalChoice {
  world::Vec3 goal = world::Vec3::Zero();
  bool imagined = false;
  std::optional<int> k;
};

// Extension points used by the curriculum and the baselines. Every hook is
// optional; the defaults give plain sparse-reward DDPG+HER.
struct TrainHooks {
  // Reward used when sampling (relabelled or not). Default: sparse.
  replay::RewardFn reward_fn;
  // Goal for a training episode given its start. Default: original goal.
  std::function<GoalChoice(const world::EnvStart&)> select_goal;
  // Extra immediate reward for the critic target of a sampled batch.
  std::function<Eigen::VectorXd(const replay::Batch&)> bonus;
  // Called after every cycle (post target sync).
  std::function<void(int epoch, int cycle)> after_cycle;
};

struct EpochStats {
  int epoch = 0;
  double success_rate = 0.0;
  double mean_critic_loss = 0.0;
  double mean_actor_loss = 0.0;
  // Fraction of this epoch's training episodes that used a selected goal
  // different from the original.
  double imagined_fraction = 0.0;
  // Fraction of this epoch's exploratory episodes that ended at their goal.
  double train_success_rate = 0.0;
};

// Success rate of `rollouts` deterministic episodes against original goals.
// Episode seeds come from `seed` only.
double EvaluateSuccess(const Policy& policy, world::GoalEnv& env, int rollouts,
                       std::uint64_t seed);

// Owns the replay buffer and the training RNG of one run.
class Trainer {
 public:
  Trainer(world::GoalEnv& env, Agent& agent, TrainSchedule schedule,
          std::uint64_t seed);

  // One epoch of training followed by evaluation; `epoch` numbers from 0.
  EpochStats RunEpoch(const TrainHooks& hooks);
  int epochs_done() const { return epoch_; }

  const replay::ReplayBuffer& buffer() const { return buffer_; }
  const TrainSchedule& schedule() const { return schedule_; }

 private:
  world::GoalEnv& env_;
  Agent& agent_;
  TrainSchedule schedule_;
  std::uint64_t seed_;
  replay::ReplayBuffer buffer_;
  std::mt19937_64 rng_;
  int epoch_ = 0;
};

replay::RewardFn SparseRewardFn(double epsilon);

// Columns: epoch,success_rate,train_success_rate,critic_loss,actor_loss,
// imagined_fraction. Values are printed with 17 significant digits.
void WriteLearningCurveCsv(std::ostream& out,
                           const std::vector<EpochStats>& curve);

}  // namespace objgoal::agent

#endif  // OBJGOAL_AGENT_TRAINER_H_
