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

#include "objgoal/curriculum/curriculum.h"

#include <algorithm>
#include <iomanip>
#include <ostream>
#include <string>

#include "objgoal/error.h"
#include "objgoal/seed.h"
#include "objgoal/world/config_io.h"

namespace objgoal::curriculum {

ImagineFn AsImagineFn(const imaginer::ImaginerModel& model) {
  return [&model](const world::Vec3& start, const world::Vec3& goal, int k) {
    return imaginer::Imagine(model, start, goal, k);
  };
}

void CurriculumConfig::Validate() const {
  if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("curriculum: p must lie in [0, 1]");
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw ConfigError("curriculum: threshold must lie in [0, 1]");
  }
  if (window < 1) throw ConfigError("curriculum: window must be >= 1");
  if (min_fill < 1 || min_fill > window) {
    throw ConfigError("curriculum: min_fill must lie in [1, window]");
  }
}

nlohmann::json CurriculumConfig::ToJson() const {
  return {{"p", p},
          {"threshold", threshold},
          {"window", window},
          {"min_fill", min_fill},
          {"mix_after_complete", mix_after_complete},
          {"sampling", sampling == KSampling::kUniform ? "uniform" : "frontier"}};
}

CurriculumConfig CurriculumConfig::FromJson(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("curriculum config must be an object");
  world::RejectUnknownKeys(
      j, {"p", "threshold", "window", "min_fill", "mix_after_complete", "sampling"},
      "curriculum config");
  CurriculumConfig c;
  try {
    c.p = j.value("p", c.p);
    c.threshold = j.value("threshold", c.threshold);
    c.window = j.value("window", c.window);
    c.min_fill = j.value("min_fill", c.min_fill);
    c.mix_after_complete = j.value("mix_after_complete", c.mix_after_complete);
    const std::string sampling = j.value("sampling", std::string("uniform"));
    if (sampling == "uniform") {
      c.sampling = KSampling::kUniform;
    } else if (sampling == "frontier") {
      c.sampling = KSampling::kFrontierOnly;
    } else {
      throw ConfigError("curriculum: unknown sampling '" + sampling + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("curriculum config: ") + e.what());
  }
  c.Validate();
  return c;
}

CurriculumState::CurriculumState(int horizon, CurriculumConfig config)
    : horizon_(horizon), config_(config) {
  config_.Validate();
  if (horizon < 1) throw ConfigError("curriculum horizon must be >= 1");
  // k_max starts at 2 but never above T + 1.
  k_max_ = std::min(2, horizon + 1);
}

double CurriculumState::window_success_rate() const {
  if (window_.empty()) return 0.0;
  return static_cast<double>(std::count(window_.begin(), window_.end(), true)) /
         static_cast<double>(window_.size());
}

void CurriculumState::RecordBoundary(bool success) {
  window_.push_back(success);
  while (static_cast<int>(window_.size()) > config_.window) window_.pop_front();
}

bool CurriculumState::MaybeAdvance() {
  if (complete()) return false;
  if (static_cast<int>(window_.size()) < config_.min_fill) return false;
  if (window_success_rate() < config_.threshold) return false;
  ++k_max_;
  window_.clear();
  return true;
}

agent::GoalChoice SelectGoal(const CurriculumState& state,
                             const ImagineFn& imagine, const world::Vec3& start,
                             const world::Vec3& goal, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const bool original = unit(rng) < state.config().p ||
                        (state.complete() && !state.config().mix_after_complete);
  if (original) return {goal, false, std::nullopt};
  const int k_hi = std::min(state.k_max(), state.horizon());
  int k = k_hi;
  if (state.config().sampling == KSampling::kUniform) {
    k = std::uniform_int_distribution<int>(1, k_hi)(rng);
  }
  return {imagine(start, goal, k), true, k};
}

bool EvaluateBoundary(CurriculumState& state, const agent::Policy& policy,
                      world::GoalEnv& env, const ImagineFn& imagine,
                      std::mt19937_64& rng) {
  if (state.complete()) {
    throw Error("boundary evaluation requested after the curriculum completed");
  }
  const world::EnvStart start = env.Reset(rng());
  const world::Vec3 h = imagine(start.step.achieved, start.goal.position, state.k_max());
  const bool success =
      agent::RunEpisode(policy, env, start, h, false, rng).success();
  state.RecordBoundary(success);
  return success;
}

replay::Episode TrainingIteration(agent::Agent& agent, world::GoalEnv& env,
                                  const ImagineFn& imagine,
                                  const CurriculumState& state,
                                  replay::ReplayBuffer& buffer,
                                  std::mt19937_64& rng,
                                  agent::GoalChoice* choice) {
  const world::EnvStart start = env.Reset(rng());
  const agent::GoalChoice selected =
      SelectGoal(state, imagine, start.step.achieved, start.goal.position, rng);
  replay::Episode ep = agent::RunEpisode(agent::AsPolicy(agent), env, start,
                                         selected.goal, true, rng);
  agent.ObserveEpisode(ep);
  buffer.Store(ep);
  if (choice != nullptr) *choice = selected;
  return ep;
}

FoCurriculum::FoCurriculum(const world::WorldConfig& world, ImagineFn imagine,
                           CurriculumConfig config, std::uint64_t seed)
    : env_(std::make_unique<world::ManipulationEnv>(world)),
      imagine_(std::move(imagine)),
      state_(world.horizon, config),
      select_rng_(DeriveSeed(seed, stream::kCurriculum)),
      boundary_rng_(DeriveSeed(seed, stream::kBoundary)) {}

agent::TrainHooks FoCurriculum::Hooks(const agent::Agent& policy_agent) {
  agent::TrainHooks hooks;
  hooks.select_goal = [this](const world::EnvStart& start) {
    return SelectGoal(state_, imagine_, start.step.achieved,
                      start.goal.position, select_rng_);
  };
  hooks.after_cycle = [this, &policy_agent](int, int) {
    if (state_.complete()) return;
    EvaluateBoundary(state_, agent::AsPolicy(policy_agent), *env_, imagine_,
                     boundary_rng_);
    ++boundary_evaluations_;
    state_.MaybeAdvance();
  };
  return hooks;
}

void WriteTraceCsv(std::ostream& out, const std::vector<TraceRow>& rows) {
  out << "epoch,k_max,boundary_success_rate,imagined_fraction\n";
  out << std::setprecision(17);
  for (const TraceRow& r : rows) {
    out << r.epoch << ',' << r.k_max << ',' << r.boundary_success_rate << ','
        << r.imagined_fraction << '\n';
  }
}

}  // namespace objgoal::curriculum
