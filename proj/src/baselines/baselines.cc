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


#include "objgoal/baselines/baselines.h"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <utility>

#include "objgoal/error.h"
#include "objgoal/seed.h"
#include "objgoal/world/config_io.h"
#include "objgoal/world/env.h"

namespace objgoal::baselines {

using nlohmann::json;

Algo ParseAlgo(std::string_view name) {
  if (name == "her") return Algo::kHer;
  if (name == "shaped") return Algo::kShaped;
  if (name == "rnd") return Algo::kRnd;
  if (name == "fo") return Algo::kFo;
  throw ConfigError("unknown algorithm '" + std::string(name) +
                    "' (expected her, shaped, rnd or fo)");
}

std::string AlgoName(Algo algo) {
  switch (algo) {
    case Algo::kHer:
      return "her";
    case Algo::kShaped:
      return "shaped";
    case Algo::kRnd:
      return "rnd";
    case Algo::kFo:
      return "fo";
  }
  return "unknown";
}

double ShapedReward(const world::Vec3& achieved_next, const world::Vec3& goal) {
  return -(achieved_next - goal).norm();
}

replay::RewardFn ShapedRewardFn() {
  return [](const world::Vec3& achieved, const world::Vec3& goal) {
    return ShapedReward(achieved, goal);
  };
}

void RndConfig::Validate() const {
  if (embedding_size < 1 || hidden_width < 1 || hidden_layers < 0) {
    throw ConfigError("rnd network sizes must be positive");
  }
  if (!(learning_rate >= 0.0)) throw ConfigError("rnd learning_rate must be >= 0");
  if (!(bonus_scale >= 0.0)) throw ConfigError("rnd bonus_scale must be >= 0");
  if (!(bonus_cap >= 0.0)) throw ConfigError("rnd bonus_cap must be >= 0");
  if (!(std_floor > 0.0)) throw ConfigError("rnd std_floor must be > 0");
}

json RndConfig::ToJson() const {
  return {{"embedding_size", embedding_size}, {"hidden_width", hidden_width},
          {"hidden_layers", hidden_layers},   {"learning_rate", learning_rate},
          {"bonus_scale", bonus_scale},       {"bonus_cap", bonus_cap},
          {"std_floor", std_floor}};
}

RndConfig RndConfig::FromJson(const json& j) {
  if (!j.is_object()) throw ConfigError("rnd config must be an object");
  world::RejectUnknownKeys(j,
                           {"embedding_size", "hidden_width", "hidden_layers",
                            "learning_rate", "bonus_scale", "bonus_cap",
                            "std_floor"},
                           "rnd config");
  RndConfig c;
  auto get = [&](const char* key, auto& field) {
    if (!j.contains(key)) return;
    try {
      field = j.at(key).get<std::decay_t<decltype(field)>>();
    } catch (const json::exception& e) {
      throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
    }
  };
  get("embedding_size", c.embedding_size);
  get("hidden_width", c.hidden_width);
  get("hidden_layers", c.hidden_layers);
  get("learning_rate", c.learning_rate);
  get("bonus_scale", c.bonus_scale);
  get("bonus_cap", c.bonus_cap);
  get("std_floor", c.std_floor);
  c.Validate();
  return c;
}

RndModel::RndModel(int input_size, RndConfig config, std::uint64_t seed)
    : input_size_(input_size), config_(config) {
  if (input_size < 1) throw ConfigError("rnd input size must be >= 1");
  config_.Validate();
  spec_ = nn::MakeSpec(input_size, config_.hidden_width, config_.hidden_layers,
                       config_.embedding_size);
  std::mt19937_64 rng(seed);
  target_ = nn::InitParams(spec_, rng);
  predictor_ = nn::InitParams(spec_, rng);
  adam_ = nn::AdamState::ZerosLike(predictor_);
}

Eigen::VectorXd RndModel::Errors(const Eigen::MatrixXd& states) const {
  if (states.rows() != input_size_) {
    throw DimensionError("rnd state", input_size_, states.rows());
  }
  if (!states.allFinite()) throw NonFiniteError("rnd state is not finite");
  const Eigen::MatrixXd diff = nn::Forward(predictor_, spec_, states) -
                               nn::Forward(target_, spec_, states);
  return diff.colwise().squaredNorm().transpose();
}

double RndModel::error_std() const {
  const double var = count_ > 1.0 ? m2_ / count_ : 1.0;
  return std::max(std::sqrt(var), config_.std_floor);
}

Eigen::VectorXd RndModel::Bonus(const Eigen::MatrixXd& states) const {
  const double scale = config_.bonus_scale / error_std();
  return (Errors(states) * scale).cwiseMax(0.0).cwiseMin(config_.bonus_cap);
}

void RndModel::ObserveErrors(const Eigen::VectorXd& errors) {
  if (!errors.allFinite()) throw NonFiniteError("rnd error is not finite");
  for (double e : errors) {
    count_ += 1.0;
    const double delta = e - mean_;
    mean_ += delta / count_;
    m2_ += delta * (e - mean_);
  }
}

double RndModel::TrainStep(const Eigen::MatrixXd& states) {
  if (states.rows() != input_size_) {
    throw DimensionError("rnd state", input_size_, states.rows());
  }
  const double n = static_cast<double>(states.cols());
  if (n == 0) return 0.0;
  nn::ForwardCache cache;
  const Eigen::MatrixXd pred = nn::Forward(predictor_, spec_, states, &cache);
  const Eigen::MatrixXd diff = pred - nn::Forward(target_, spec_, states);
  const double loss = diff.colwise().squaredNorm().sum() / n;
  if (!std::isfinite(loss)) throw NonFiniteError("rnd loss is not finite");
  const nn::BackwardResult back =
      nn::Backward(predictor_, spec_, cache, (2.0 / n) * diff);
  nn::AdamStep(predictor_, back.grads, adam_, config_.learning_rate);
  return loss;
}

Eigen::VectorXd RndModel::BonusAndTrain(const Eigen::MatrixXd& states) {
  ObserveErrors(Errors(states));
  Eigen::VectorXd bonus = Bonus(states);
  TrainStep(states);
  return bonus;
}

Eigen::MatrixXd RndModel::TargetEmbedding(const Eigen::MatrixXd& states) const {
  if (states.rows() != input_size_) {
    throw DimensionError("rnd state", input_size_, states.rows());
  }
  return nn::Forward(target_, spec_, states);
}

std::function<Eigen::VectorXd(const replay::Batch&)> RndBonusHook(
    RndModel& model, const agent::Agent& agent) {
  return [&model, &agent](const replay::Batch& batch) {
    return model.BonusAndTrain(
        agent.observation_normalizer().Apply(batch.next_observations));
  };
}

agent::AgentConfig AdjustAgentConfig(Algo algo, const world::WorldConfig& world,
                                     agent::AgentConfig config) {
  if (algo == Algo::kShaped) {
    const world::Box bounds = world.ObjectBounds();
    config.reward_bound =
        std::max(config.reward_bound, (bounds.max - bounds.min).norm());
  }
  return config;
}

BaselineRun TrainBaseline(Algo algo, const world::WorldConfig& world,
                          agent::AgentConfig agent_config,
                          const agent::TrainSchedule& schedule,
                          const RndConfig& rnd, std::uint64_t seed) {
  if (algo == Algo::kFo) {
    throw ConfigError("fo is trained through the curriculum, not as a baseline");
  }
  agent_config = AdjustAgentConfig(algo, world, agent_config);
  world::ManipulationEnv env(world);
  BaselineRun run{agent::Agent(env.observation_size(), env.action_size(),
                               agent_config,
                               DeriveSeed(seed, stream::kAgentInit)),
                  {}};
  agent::Trainer trainer(env, run.agent, schedule, seed);
  agent::TrainHooks hooks;
  std::optional<RndModel> model;
  if (algo == Algo::kShaped) hooks.reward_fn = ShapedRewardFn();
  if (algo == Algo::kRnd) {
    model.emplace(env.observation_size(), rnd, DeriveSeed(seed, stream::kBonus));
    hooks.bonus = RndBonusHook(*model, run.agent);
  }
  for (int e = 0; e < schedule.epochs; ++e) {
    run.curve.push_back(trainer.RunEpoch(hooks));
  }
  return run;
}

}  // namespace objgoal::baselines
