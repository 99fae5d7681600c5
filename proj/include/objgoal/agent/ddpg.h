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

#ifndef OBJGOAL_AGENT_DDPG_H_
#define OBJGOAL_AGENT_DDPG_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "json.hpp"
#include "objgoal/nn/adam.h"
#include "objgoal/nn/mlp.h"
#include "objgoal/replay/episode.h"
#include "objgoal/replay/normalizer.h"
#include "objgoal/replay/replay_buffer.h"
#include "objgoal/world/env.h"

namespace objgoal::agent {

struct AgentConfig {
  double gamma = 0.98;
  // target <- polyak_tau * online + (1 - polyak_tau) * target
  double polyak_tau = 0.05;
  double actor_lr = 1e-3;
  double critic_lr = 1e-3;
  // Gaussian exploration noise, as a fraction of the action range.
  double noise_scale = 0.2;
  double random_action_probability = 0.3;
  double action_penalty = 1.0;
  int batch_size = 256;
  int hidden_width = 256;
  int hidden_layers = 3;
  double her_ratio = 4.0;
  // Largest |r| of the immediate reward; critic targets are clipped to
  // [-reward_bound / (1 - gamma), 0].
  double reward_bound = 1.0;
  double observation_clip = 5.0;
  double normalizer_std_floor = 1e-2;

  // 1 - 1/T
  static double GammaForHorizon(int horizon);
  double target_lower_bound() const { return -reward_bound / (1.0 - gamma); }

  // Throws ConfigError for rates outside their valid ranges.
  void Validate() const;

  nlohmann::json ToJson() const;
  static AgentConfig FromJson(const nlohmann::json& j);

  bool operator==(const AgentConfig&) const = default;
};

struct UpdateLosses {
  double critic_loss = 0.0;
  double actor_loss = 0.0;
};

struct ActResult {
  std::vector<double> action;
  bool random_replaced = false;
};

// Goal-conditioned DDPG learner: actor mu(s, g), critic Q(s, a, g), their
// Polyak-averaged targets, and the observation/goal normalizers. Actions are
// in [-1, 1]^n.
class Agent {
 public:
  Agent(int observation_size, int action_size, AgentConfig config,
        std::uint64_t seed);

  // Deterministic actor output when explore is false; otherwise Gaussian noise
  // plus, with random_action_probability, replacement by a uniform action.
  // Always clipped to the action box.
  std::vector<double> Act(std::span<const double> observation,
                          const world::Vec3& goal, bool explore,
                          std::mt19937_64& rng) const;
  ActResult ActDetailed(std::span<const double> observation,
                        const world::Vec3& goal, bool explore,
                        std::mt19937_64& rng) const;

  // One critic and one actor Adam step. `bonus`, if given, is added to the
  // batch rewards inside the critic target only.
  UpdateLosses Update(const replay::Batch& batch,
                      const Eigen::VectorXd* bonus = nullptr);

  // Critic targets y for a batch, after clipping.
  Eigen::VectorXd CriticTargets(const replay::Batch& batch,
                                const Eigen::VectorXd* bonus = nullptr) const;
  Eigen::VectorXd CriticValues(const replay::Batch& batch) const;

  void SyncTargets(double tau);
  void SyncTargets() { SyncTargets(config_.polyak_tau); }

  // Feeds the normalizers with a freshly stored episode: all observations,
  // the achieved path and the goal.
  void ObserveEpisode(const replay::Episode& episode);

  const AgentConfig& config() const { return config_; }
  int observation_size() const { return observation_size_; }
  int action_size() const { return action_size_; }
  const nn::MlpSpec& actor_spec() const { return actor_spec_; }
  const nn::MlpSpec& critic_spec() const { return critic_spec_; }
  const nn::MlpParams& actor() const { return actor_; }
  const nn::MlpParams& critic() const { return critic_; }
  const nn::MlpParams& actor_target() const { return actor_target_; }
  const nn::MlpParams& critic_target() const { return critic_target_; }
  const replay::Normalizer& observation_normalizer() const { return obs_norm_; }
  const replay::Normalizer& goal_normalizer() const { return goal_norm_; }

  // Checkpoint directory: actor.bin, critic.bin, actor_target.bin,
  // critic_target.bin (network format of nn/checkpoint.h), normalizers.bin,
  // manifest.json (config and sizes).
  void Save(const std::filesystem::path& dir) const;
  static Agent Load(const std::filesystem::path& dir);

 private:
  Eigen::MatrixXd ActorInput(const Eigen::MatrixXd& obs,
                             const Eigen::Matrix3Xd& goals) const;
  Eigen::MatrixXd CriticInput(const Eigen::MatrixXd& normalized_actor_input,
                              const Eigen::MatrixXd& actions) const;

  AgentConfig config_;
  int observation_size_;
  int action_size_;
  nn::MlpSpec actor_spec_;
  nn::MlpSpec critic_spec_;
  nn::MlpParams actor_;
  nn::MlpParams critic_;
  nn::MlpParams actor_target_;
  nn::MlpParams critic_target_;
  nn::AdamState actor_adam_;
  nn::AdamState critic_adam_;
  replay::Normalizer obs_norm_;
  replay::Normalizer goal_norm_;
};

// Anything that maps (observation, goal) to an action.
using Policy = std::function<std::vector<double>(
    std::span<const double> observation, const world::Vec3& goal, bool explore,
    std::mt19937_64& rng)>;

Policy AsPolicy(const Agent& agent);

// Runs T steps from an already reset environment, scoring every step with
// the sparse reward against `goal`.
replay::Episode RunEpisode(const Policy& policy, world::GoalEnv& env,
                           const world::EnvStart& start,
                           const world::Vec3& goal, bool explore,
                           std::mt19937_64& rng);

// Resets env with a seed drawn from rng, then RunEpisode against
// goal_override if given, else the environment goal.
replay::Episode Rollout(const Policy& policy, world::GoalEnv& env,
                        const std::optional<world::Vec3>& goal_override,
                        bool explore, std::mt19937_64& rng);

}  // namespace objgoal::agent

#endif  // OBJGOAL_AGENT_DDPG_H_
