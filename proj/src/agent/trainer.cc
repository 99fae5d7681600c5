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

#include "objgoal/agent/trainer.h"

#include <iomanip>
#include <ostream>
#include <string>

#include "objgoal/error.h"
#include "objgoal/seed.h"
#include "objgoal/world/config_io.h"

namespace objgoal::agent {

using nlohmann::json;

void TrainSchedule::Validate() const {
  if (epochs < 0) throw ConfigError("epochs must be >= 0");
  if (cycles_per_epoch < 1 || episodes_per_cycle < 1) {
    throw ConfigError("cycles_per_epoch and episodes_per_cycle must be >= 1");
  }
  if (updates_per_cycle < 0) throw ConfigError("updates_per_cycle must be >= 0");
  if (eval_rollouts < 1) throw ConfigError("eval_rollouts must be >= 1");
  if (buffer_episodes < 1) throw ConfigError("buffer_episodes must be >= 1");
}

json TrainSchedule::ToJson() const {
  return {{"epochs", epochs},
          {"cycles_per_epoch", cycles_per_epoch},
          {"episodes_per_cycle", episodes_per_cycle},
          {"updates_per_cycle", updates_per_cycle},
          {"eval_rollouts", eval_rollouts},
          {"buffer_episodes", buffer_episodes}};
}

TrainSchedule TrainSchedule::FromJson(const json& j) {
  if (!j.is_object()) throw ConfigError("schedule must be an object");
  world::RejectUnknownKeys(j,
                           {"epochs", "cycles_per_epoch", "episodes_per_cycle",
                            "updates_per_cycle", "eval_rollouts",
                            "buffer_episodes"},
                           "schedule");
  TrainSchedule s;
  auto get = [&](const char* key, int& field) {
    if (!j.contains(key)) return;
    if (!j.at(key).is_number_integer()) {
      throw ConfigError(std::string("schedule '") + key + "' must be an integer");
    }
    field = j.at(key).get<int>();
  };
  get("epochs", s.epochs);
  get("cycles_per_epoch", s.cycles_per_epoch);
  get("episodes_per_cycle", s.episodes_per_cycle);
  get("updates_per_cycle", s.updates_per_cycle);
  get("eval_rollouts", s.eval_rollouts);
  get("buffer_episodes", s.buffer_episodes);
  s.Validate();
  return s;
}

replay::RewardFn SparseRewardFn(double epsilon) {
  return [epsilon](const world::Vec3& achieved, const world::Vec3& goal) {
    return world::SparseReward(achieved, goal, epsilon);
  };
}

double EvaluateSuccess(const Policy& policy, world::GoalEnv& env, int rollouts,
                       std::uint64_t seed) {
  if (rollouts < 1) throw ConfigError("eval rollouts must be >= 1");
  std::mt19937_64 rng(seed);
  int successes = 0;
  for (int i = 0; i < rollouts; ++i) {
    successes += Rollout(policy, env, std::nullopt, false, rng).success();
  }
  return static_cast<double>(successes) / rollouts;
}

Trainer::Trainer(world::GoalEnv& env, Agent& agent, TrainSchedule schedule,
                 std::uint64_t seed)
    : env_(env),
      agent_(agent),
      schedule_(schedule),
      seed_(seed),
      buffer_(static_cast<std::size_t>(schedule.buffer_episodes), env.horizon(),
              env.observation_size(), env.action_size()),
      rng_(DeriveSeed(seed, stream::kTraining)) {
  schedule_.Validate();
  if (agent.observation_size() != env.observation_size() ||
      agent.action_size() != env.action_size()) {
    throw DimensionError("agent/env observation size", env.observation_size(),
                         agent.observation_size());
  }
}

EpochStats Trainer::RunEpoch(const TrainHooks& hooks) {
  const replay::RewardFn reward_fn =
      hooks.reward_fn ? hooks.reward_fn : SparseRewardFn(env_.epsilon());
  const Policy policy = AsPolicy(agent_);
  EpochStats stats;
  stats.epoch = epoch_;
  int episodes = 0, imagined = 0, train_successes = 0, updates = 0;
  for (int cycle = 0; cycle < schedule_.cycles_per_epoch; ++cycle) {
    for (int e = 0; e < schedule_.episodes_per_cycle; ++e) {
      const world::EnvStart start = env_.Reset(rng_());
      GoalChoice choice{start.goal.position, false, std::nullopt};
      if (hooks.select_goal) choice = hooks.select_goal(start);
      replay::Episode ep = RunEpisode(policy, env_, start, choice.goal, true, rng_);
      train_successes += ep.success();
      imagined += choice.imagined;
      ++episodes;
      agent_.ObserveEpisode(ep);
      buffer_.Store(std::move(ep));
    }
    for (int u = 0; u < schedule_.updates_per_cycle; ++u) {
      replay::Batch batch = buffer_.Sample(agent_.config().batch_size,
                                           agent_.config().her_ratio, reward_fn,
                                           rng_);
      UpdateLosses losses;
      if (hooks.bonus) {
        const Eigen::VectorXd bonus = hooks.bonus(batch);
        losses = agent_.Update(batch, &bonus);
      } else {
        losses = agent_.Update(batch);
      }
      stats.mean_critic_loss += losses.critic_loss;
      stats.mean_actor_loss += losses.actor_loss;
      ++updates;
    }
    agent_.SyncTargets();
    if (hooks.after_cycle) hooks.after_cycle(epoch_, cycle);
  }
  if (updates > 0) {
    stats.mean_critic_loss /= updates;
    stats.mean_actor_loss /= updates;
  }
  stats.imagined_fraction = static_cast<double>(imagined) / episodes;
  stats.train_success_rate = static_cast<double>(train_successes) / episodes;
  stats.success_rate =
      EvaluateSuccess(policy, env_, schedule_.eval_rollouts,
                      DeriveSeed(seed_, stream::kEvaluation, epoch_));
  ++epoch_;
  return stats;
}

void WriteLearningCurveCsv(std::ostream& out,
                           const std::vector<EpochStats>& curve) {
  out << "epoch,success_rate,train_success_rate,critic_loss,actor_loss,"
         "imagined_fraction\n";
  out << std::setprecision(17);
  for (const EpochStats& s : curve) {
    out << s.epoch << ',' << s.success_rate << ',' << s.train_success_rate
        << ',' << s.mean_critic_loss << ',' << s.mean_actor_loss << ','
        << s.imagined_fraction << '\n';
  }
}

}  // namespace objgoal::agent
