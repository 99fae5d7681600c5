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

#include "objgoal/agent/ddpg.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>

#include "objgoal/error.h"
#include "objgoal/nn/checkpoint.h"
#include "objgoal/world/config_io.h"

namespace objgoal::agent {

using nlohmann::json;

double AgentConfig::GammaForHorizon(int horizon) {
  if (horizon < 1) throw ConfigError("horizon must be >= 1");
  return 1.0 - 1.0 / static_cast<double>(horizon);
}

void AgentConfig::Validate() const {
  auto fail = [](const std::string& why) { throw ConfigError("agent config: " + why); };
  if (!(gamma >= 0.0 && gamma < 1.0)) fail("gamma must lie in [0, 1)");
  if (!(polyak_tau > 0.0 && polyak_tau < 1.0)) fail("polyak_tau must lie in (0, 1)");
  if (!(actor_lr > 0.0) || !(critic_lr > 0.0)) fail("learning rates must be > 0");
  if (!(noise_scale >= 0.0)) fail("noise_scale must be >= 0");
  if (!(random_action_probability >= 0.0 && random_action_probability <= 1.0)) {
    fail("random_action_probability must lie in [0, 1]");
  }
  if (!(action_penalty >= 0.0)) fail("action_penalty must be >= 0");
  if (batch_size < 1) fail("batch_size must be >= 1");
  if (hidden_width < 1 || hidden_layers < 0) fail("bad hidden layer shape");
  if (!(her_ratio >= 0.0)) fail("her_ratio must be >= 0");
  if (!(reward_bound > 0.0)) fail("reward_bound must be > 0");
}

json AgentConfig::ToJson() const {
  return {{"gamma", gamma},
          {"polyak_tau", polyak_tau},
          {"actor_lr", actor_lr},
          {"critic_lr", critic_lr},
          {"noise_scale", noise_scale},
          {"random_action_probability", random_action_probability},
          {"action_penalty", action_penalty},
          {"batch_size", batch_size},
          {"hidden_width", hidden_width},
          {"hidden_layers", hidden_layers},
          {"her_ratio", her_ratio},
          {"reward_bound", reward_bound},
          {"observation_clip", observation_clip},
          {"normalizer_std_floor", normalizer_std_floor}};
}

AgentConfig AgentConfig::FromJson(const json& j) {
  AgentConfig c;
  if (!j.is_object()) throw ConfigError("agent config must be an object");
  world::RejectUnknownKeys(
      j,
      {"gamma", "polyak_tau", "actor_lr", "critic_lr", "noise_scale",
       "random_action_probability", "action_penalty", "batch_size",
       "hidden_width", "hidden_layers", "her_ratio", "reward_bound",
       "observation_clip", "normalizer_std_floor"},
      "agent config");
  auto get = [&](const char* key, auto& field) {
    if (!j.contains(key)) return;
    try {
      field = j.at(key).get<std::decay_t<decltype(field)>>();
    } catch (const json::exception& e) {
      throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
    }
  };
  get("gamma", c.gamma);
  get("polyak_tau", c.polyak_tau);
  get("actor_lr", c.actor_lr);
  get("critic_lr", c.critic_lr);
  get("noise_scale", c.noise_scale);
  get("random_action_probability", c.random_action_probability);
  get("action_penalty", c.action_penalty);
  get("batch_size", c.batch_size);
  get("hidden_width", c.hidden_width);
  get("hidden_layers", c.hidden_layers);
  get("her_ratio", c.her_ratio);
  get("reward_bound", c.reward_bound);
  get("observation_clip", c.observation_clip);
  get("normalizer_std_floor", c.normalizer_std_floor);
  c.Validate();
  return c;
}

Agent::Agent(int observation_size, int action_size, AgentConfig config,
             std::uint64_t seed)
    : config_(config),
      observation_size_(observation_size),
      action_size_(action_size),
      obs_norm_(observation_size, config.observation_clip,
                config.normalizer_std_floor),
      goal_norm_(3, config.observation_clip, config.normalizer_std_floor) {
  config_.Validate();
  if (observation_size < 1 || action_size < 1) {
    throw ConfigError("agent needs positive observation and action sizes");
  }
  const int actor_in = observation_size + 3;
  actor_spec_ = nn::MakeSpec(actor_in, config_.hidden_width,
                             config_.hidden_layers, action_size,
                             nn::OutputActivation::kScaledTanh, 1.0);
  critic_spec_ = nn::MakeSpec(actor_in + action_size, config_.hidden_width,
                              config_.hidden_layers, 1);
  std::mt19937_64 rng(seed);
  actor_ = nn::InitParams(actor_spec_, rng, 1e-2);
  critic_ = nn::InitParams(critic_spec_, rng);
  actor_target_ = actor_;
  critic_target_ = critic_;
  actor_adam_ = nn::AdamState::ZerosLike(actor_);
  critic_adam_ = nn::AdamState::ZerosLike(critic_);
}

Eigen::MatrixXd Agent::ActorInput(const Eigen::MatrixXd& obs,
                                  const Eigen::Matrix3Xd& goals) const {
  Eigen::MatrixXd in(observation_size_ + 3, obs.cols());
  in.topRows(observation_size_) = obs_norm_.Apply(obs);
  in.bottomRows(3) = goal_norm_.Apply(Eigen::MatrixXd(goals));
  return in;
}

Eigen::MatrixXd Agent::CriticInput(const Eigen::MatrixXd& actor_input,
                                   const Eigen::MatrixXd& actions) const {
  Eigen::MatrixXd in(actor_input.rows() + action_size_, actor_input.cols());
  in.topRows(actor_input.rows()) = actor_input;
  in.bottomRows(action_size_) = actions;
  return in;
}

ActResult Agent::ActDetailed(std::span<const double> observation,
                             const world::Vec3& goal, bool explore,
                             std::mt19937_64& rng) const {
  if (static_cast<int>(observation.size()) != observation_size_) {
    throw DimensionError("agent observation", observation_size_,
                         observation.size());
  }
  for (double v : observation) {
    if (!std::isfinite(v)) throw NonFiniteError("non-finite observation");
  }
  if (!goal.allFinite()) throw NonFiniteError("non-finite goal");
  Eigen::MatrixXd obs =
      Eigen::Map<const Eigen::VectorXd>(observation.data(), observation.size());
  Eigen::Matrix3Xd g = goal;
  Eigen::MatrixXd out = nn::Forward(actor_, actor_spec_, ActorInput(obs, g));
  ActResult result;
  result.action.assign(out.data(), out.data() + out.size());
  if (explore) {
    std::normal_distribution<double> normal(0.0, 1.0);
    for (double& a : result.action) {
      a = std::clamp(a + config_.noise_scale * normal(rng), -1.0, 1.0);
    }
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    if (unit(rng) < config_.random_action_probability) {
      std::uniform_real_distribution<double> box(-1.0, 1.0);
      for (double& a : result.action) a = box(rng);
      result.random_replaced = true;
    }
  }
  for (double& a : result.action) a = std::clamp(a, -1.0, 1.0);
  return result;
}

std::vector<double> Agent::Act(std::span<const double> observation,
                               const world::Vec3& goal, bool explore,
                               std::mt19937_64& rng) const {
  return ActDetailed(observation, goal, explore, rng).action;
}

Eigen::VectorXd Agent::CriticTargets(const replay::Batch& batch,
                                     const Eigen::VectorXd* bonus) const {
  const Eigen::MatrixXd next_in = ActorInput(batch.next_observations, batch.goals);
  const Eigen::MatrixXd next_actions =
      nn::Forward(actor_target_, actor_spec_, next_in);
  const Eigen::MatrixXd next_q = nn::Forward(
      critic_target_, critic_spec_, CriticInput(next_in, next_actions));
  Eigen::VectorXd y = batch.rewards + config_.gamma * next_q.row(0).transpose();
  if (bonus != nullptr) {
    if (bonus->size() != batch.rewards.size()) {
      throw DimensionError("reward bonus", batch.rewards.size(), bonus->size());
    }
    y += *bonus;
  }
  return y.cwiseMax(config_.target_lower_bound()).cwiseMin(0.0);
}

Eigen::VectorXd Agent::CriticValues(const replay::Batch& batch) const {
  const Eigen::MatrixXd in = ActorInput(batch.observations, batch.goals);
  return nn::Forward(critic_, critic_spec_, CriticInput(in, batch.actions))
      .row(0)
      .transpose();
}

UpdateLosses Agent::Update(const replay::Batch& batch,
                           const Eigen::VectorXd* bonus) {
  const int n = batch.size();
  if (n < 1) throw Error("empty update batch");
  if (batch.observations.rows() != observation_size_) {
    throw DimensionError("batch observations", observation_size_,
                         batch.observations.rows());
  }
  if (batch.actions.rows() != action_size_) {
    throw DimensionError("batch actions", action_size_, batch.actions.rows());
  }
  const Eigen::VectorXd y = CriticTargets(batch, bonus);
  const Eigen::MatrixXd actor_in = ActorInput(batch.observations, batch.goals);

  // critic: mean squared TD error
  nn::ForwardCache critic_cache;
  const Eigen::MatrixXd q = nn::Forward(
      critic_, critic_spec_, CriticInput(actor_in, batch.actions), &critic_cache);
  const Eigen::VectorXd err = q.row(0).transpose() - y;
  UpdateLosses losses;
  losses.critic_loss = err.squaredNorm() / n;
  nn::BackwardResult critic_grad = nn::Backward(
      critic_, critic_spec_, critic_cache, (2.0 / n) * err.transpose());

  // actor: -mean Q(s, mu(s)) + penalty * mean(mu^2), through the pre-update
  // critic
  nn::ForwardCache actor_cache;
  const Eigen::MatrixXd pi = nn::Forward(actor_, actor_spec_, actor_in, &actor_cache);
  nn::ForwardCache q_pi_cache;
  const Eigen::MatrixXd q_pi = nn::Forward(
      critic_, critic_spec_, CriticInput(actor_in, pi), &q_pi_cache);
  const double penalty_norm = static_cast<double>(n) * action_size_;
  losses.actor_loss = -q_pi.mean() +
                      config_.action_penalty * pi.squaredNorm() / penalty_norm;
  nn::BackwardResult through_critic =
      nn::Backward(critic_, critic_spec_, q_pi_cache,
                   Eigen::MatrixXd::Constant(1, n, -1.0 / n));
  Eigen::MatrixXd dpi = through_critic.input_grad.bottomRows(action_size_);
  dpi += (2.0 * config_.action_penalty / penalty_norm) * pi;
  nn::BackwardResult actor_grad = nn::Backward(actor_, actor_spec_, actor_cache, dpi);

  if (!std::isfinite(losses.critic_loss) || !std::isfinite(losses.actor_loss)) {
    std::ostringstream msg;
    msg << "non-finite loss (critic " << losses.critic_loss << ", actor "
        << losses.actor_loss << ") on batch of " << n << ": reward range ["
        << batch.rewards.minCoeff() << ", " << batch.rewards.maxCoeff()
        << "], |obs|max " << batch.observations.cwiseAbs().maxCoeff();
    throw NonFiniteError(msg.str());
  }
  nn::AdamStep(critic_, critic_grad.grads, critic_adam_, config_.critic_lr);
  nn::AdamStep(actor_, actor_grad.grads, actor_adam_, config_.actor_lr);
  return losses;
}

void Agent::SyncTargets(double tau) {
  if (!(tau >= 0.0 && tau <= 1.0)) throw ConfigError("polyak tau must lie in [0, 1]");
  nn::PolyakBlend(actor_target_, actor_, tau);
  nn::PolyakBlend(critic_target_, critic_, tau);
}

void Agent::ObserveEpisode(const replay::Episode& episode) {
  obs_norm_.Update(episode.observations);
  goal_norm_.Update(Eigen::MatrixXd(episode.achieved));
  goal_norm_.Update(std::span<const double>(episode.goal.data(), 3));
}

void Agent::Save(const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  nn::SaveMlp(dir / "actor.bin", actor_spec_, actor_);
  nn::SaveMlp(dir / "critic.bin", critic_spec_, critic_);
  nn::SaveMlp(dir / "actor_target.bin", actor_spec_, actor_target_);
  nn::SaveMlp(dir / "critic_target.bin", critic_spec_, critic_target_);
  {
    std::ofstream out(dir / "normalizers.bin", std::ios::binary);
    if (!out) throw Error("cannot write " + (dir / "normalizers.bin").string());
    obs_norm_.Write(out);
    goal_norm_.Write(out);
  }
  json manifest = {{"format", "objgoal-agent-1"},
                   {"observation_size", observation_size_},
                   {"action_size", action_size_},
                   {"config", config_.ToJson()}};
  std::ofstream out(dir / "manifest.json");
  out << manifest.dump(2) << "\n";
}

Agent Agent::Load(const std::filesystem::path& dir) {
  std::ifstream manifest_in(dir / "manifest.json");
  if (!manifest_in) throw Error("missing agent manifest in " + dir.string());
  json manifest = json::parse(manifest_in);
  Agent agent(manifest.at("observation_size").get<int>(),
              manifest.at("action_size").get<int>(),
              AgentConfig::FromJson(manifest.at("config")), 0);
  auto load = [&](const char* file, const nn::MlpSpec& spec) {
    nn::LoadedMlp loaded = nn::LoadMlp(dir / file);
    if (!(loaded.spec == spec)) throw Error(std::string(file) + ": spec mismatch");
    return loaded.params;
  };
  agent.actor_ = load("actor.bin", agent.actor_spec_);
  agent.critic_ = load("critic.bin", agent.critic_spec_);
  agent.actor_target_ = load("actor_target.bin", agent.actor_spec_);
  agent.critic_target_ = load("critic_target.bin", agent.critic_spec_);
  std::ifstream norm_in(dir / "normalizers.bin", std::ios::binary);
  if (!norm_in) throw Error("missing normalizers in " + dir.string());
  agent.obs_norm_ = replay::Normalizer::Read(norm_in);
  agent.goal_norm_ = replay::Normalizer::Read(norm_in);
  return agent;
}

Policy AsPolicy(const Agent& agent) {
  return [&agent](std::span<const double> obs, const world::Vec3& goal,
                  bool explore, std::mt19937_64& rng) {
    return agent.Act(obs, goal, explore, rng);
  };
}

replay::Episode RunEpisode(const Policy& policy, world::GoalEnv& env,
                           const world::EnvStart& start,
                           const world::Vec3& goal, bool explore,
                           std::mt19937_64& rng) {
  const int horizon = env.horizon();
  replay::Episode ep;
  ep.goal = goal;
  ep.observations.resize(env.observation_size(), horizon + 1);
  ep.actions.resize(env.action_size(), horizon);
  ep.rewards.resize(horizon);
  ep.achieved.resize(3, horizon + 1);
  std::vector<double> obs = start.step.observation;
  ep.observations.col(0) = Eigen::Map<const Eigen::VectorXd>(obs.data(), obs.size());
  ep.achieved.col(0) = start.step.achieved;
  for (int t = 0; t < horizon; ++t) {
    std::vector<double> action = policy(obs, goal, explore, rng);
    if (static_cast<int>(action.size()) != env.action_size()) {
      throw DimensionError("policy action", env.action_size(), action.size());
    }
    world::EnvStep step = env.Step(action);
    ep.actions.col(t) = Eigen::Map<const Eigen::VectorXd>(action.data(), action.size());
    obs = std::move(step.observation);
    ep.observations.col(t + 1) = Eigen::Map<const Eigen::VectorXd>(obs.data(), obs.size());
    ep.achieved.col(t + 1) = step.achieved;
    ep.rewards[t] = world::SparseReward(step.achieved, goal, env.epsilon());
  }
  return ep;
}

replay::Episode Rollout(const Policy& policy, world::GoalEnv& env,
                        const std::optional<world::Vec3>& goal_override,
                        bool explore, std::mt19937_64& rng) {
  world::EnvStart start = env.Reset(rng());
  const world::Vec3 goal = goal_override.value_or(start.goal.position);
  return RunEpisode(policy, env, start, goal, explore, rng);
}

}  // namespace objgoal::agent
