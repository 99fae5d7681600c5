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


#ifndef OBJGOAL_BASELINES_BASELINES_H_
#define OBJGOAL_BASELINES_BASELINES_H_

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "json.hpp"
#include "objgoal/agent/ddpg.h"
#include "objgoal/agent/trainer.h"
#include "objgoal/nn/adam.h"
#include "objgoal/nn/mlp.h"
#include "objgoal/world/world.h"

namespace objgoal::baselines {

enum class Algo { kHer, kShaped, kRnd, kFo };

// "her", "shaped", "rnd", "fo". Throws ConfigError on anything else.
Algo ParseAlgo(std::string_view name);
std::string AlgoName(Algo algo);

// -||o_next - g||.
double ShapedReward(const world::Vec3& achieved_next, const world::Vec3& goal);
replay::RewardFn ShapedRewardFn();

struct RndConfig {
  int embedding_size = 32;
  int hidden_width = 64;
  int hidden_layers = 2;
  double learning_rate = 1e-3;
  double bonus_scale = 0.5;
  double bonus_cap = 1.0;
  // Floor of the running error std used to normalize bonuses.
  double std_floor = 1e-8;

  void Validate() const;
  nlohmann::json ToJson() const;
  static RndConfig FromJson(const nlohmann::json& j);
  bool operator==(const RndConfig&) const = default;
};

// Random network distillation. The target network is fixed at construction;
// the predictor regresses onto it. Squared prediction errors are divided by
// their running standard deviation to form the bonus.
class RndModel {
 public:
  RndModel(int input_size, RndConfig config, std::uint64_t seed);

  // ||predictor(s) - target(s)||^2 per column. Throws DimensionError on a
  // wrong row count and NonFiniteError on non-finite input.
  Eigen::VectorXd Errors(const Eigen::MatrixXd& states) const;

  // clip(scale * error / running_std, 0, cap) with the current statistics.
  Eigen::VectorXd Bonus(const Eigen::MatrixXd& states) const;

  // Adds errors to the running statistics.
  void ObserveErrors(const Eigen::VectorXd& errors);

  // One Adam step on the mean squared error over the columns; returns the
  // pre-step mean error.
  double TrainStep(const Eigen::MatrixXd& states);

  // Per-update protocol: errors, statistics, bonus, then one predictor step.
  Eigen::VectorXd BonusAndTrain(const Eigen::MatrixXd& states);

  Eigen::MatrixXd TargetEmbedding(const Eigen::MatrixXd& states) const;
  double error_std() const;
  const RndConfig& config() const { return config_; }
  int input_size() const { return input_size_; }
  const nn::MlpSpec& spec() const { return spec_; }
  const nn::MlpParams& target_params() const { return target_; }
  const nn::MlpParams& predictor_params() const { return predictor_; }

 private:
  int input_size_;
  RndConfig config_;
  nn::MlpSpec spec_;
  nn::MlpParams target_;
  nn::MlpParams predictor_;
  nn::AdamState adam_;
  // Welford accumulators.
  double count_ = 0.0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

// Bonus hook for the trainer: next observations normalized with the agent's
// observation normalizer are fed to `model`.
std::function<Eigen::VectorXd(const replay::Batch&)> RndBonusHook(
    RndModel& model, const agent::Agent& agent);

// The shaped reward needs a wider critic target range: reward_bound is raised
// to the diagonal of the object bounds. Other algorithms are unchanged.
agent::AgentConfig AdjustAgentConfig(Algo algo, const world::WorldConfig& world,
                                     agent::AgentConfig config);

struct BaselineRun {
  agent::Agent agent;
  std::vector<agent::EpochStats> curve;
};

// Trains a manipulation agent with one of her, shaped, rnd, after
// AdjustAgentConfig. kFo is rejected here.
BaselineRun TrainBaseline(Algo algo, const world::WorldConfig& world,
                          agent::AgentConfig agent_config,
                          const agent::TrainSchedule& schedule,
                          const RndConfig& rnd, std::uint64_t seed);

}  // namespace objgoal::baselines

#endif  // OBJGOAL_BASELINES_BASELINES_H_
