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

#ifndef OBJGOAL_CURRICULUM_CURRICULUM_H_
#define OBJGOAL_CURRICULUM_CURRICULUM_H_

#include <cstdint>
#include <deque>
#include <functional>
#include <iosfwd>
#include <memory>
#include <random>
#include <vector>

#include "json.hpp"
#include "objgoal/agent/ddpg.h"
#include "objgoal/agent/trainer.h"
#include "objgoal/imaginer/imaginer.h"
#include "objgoal/replay/replay_buffer.h"
#include "objgoal/world/env.h"

namespace objgoal::curriculum {

// h = F(o_1, g, k)
using ImagineFn = std::function<world::Vec3(const world::Vec3& start,
                                            const world::Vec3& goal, int k)>;

// The returned function refers to `model`, which must outlive it.
ImagineFn AsImagineFn(const imaginer::ImaginerModel& model);

enum class KSampling {
  kUniform,       // k ~ U{1, ..., min(k_max, T)}
  kFrontierOnly,  // k = min(k_max, T); the increment-only schedule
};

struct CurriculumConfig {
  // Probability of training on the original goal.
  double p = 0.2;
  double threshold = 0.25;
  int window = 20;
  int min_fill = 10;
  // Keep mixing imagined goals once k_max has passed T.
  bool mix_after_complete = true;
  KSampling sampling = KSampling::kUniform;

  void Validate() const;
  nlohmann::json ToJson() const;
  static CurriculumConfig FromJson(const nlohmann::json& j);
  bool operator==(const CurriculumConfig&) const = default;
};

class CurriculumState {
 public:
  CurriculumState(int horizon, CurriculumConfig config);

  int k_max() const { return k_max_; }
  int horizon() const { return horizon_; }
  // k_max == T + 1
  bool complete() const { return k_max_ > horizon_; }
  const CurriculumConfig& config() const { return config_; }
  const std::deque<bool>& window() const { return window_; }
  // Mean of the window, 0 when empty.
  double window_success_rate() const;

  // Appends a boundary outcome, dropping the oldest beyond capacity.
  void RecordBoundary(bool success);

  // With at least min_fill outcomes whose mean reaches the threshold and
  // k_max <= T: k_max += 1, the window is cleared and true is returned.
  bool MaybeAdvance();

 private:
  int horizon_;
  CurriculumConfig config_;
  int k_max_ = 2;
  std::deque<bool> window_;
};

// With probability p (or always, once complete without mixing) the original
// goal; otherwise an imagined goal for a sampled k.
agent::GoalChoice SelectGoal(const CurriculumState& state,
                             const ImagineFn& imagine, const world::Vec3& start,
                             const world::Vec3& goal, std::mt19937_64& rng);

// One deterministic rollout from a fresh reset towards
// h_max = F(o_1, g, k_max); the outcome is recorded in the window.
// Requires k_max <= T.
bool EvaluateBoundary(CurriculumState& state, const agent::Policy& policy,
                      world::GoalEnv& env, const ImagineFn& imagine,
                      std::mt19937_64& rng);

// Reset, goal selection, exploratory rollout towards the selected goal and
// storage. The stored episode (returned) carries the selected goal and
// rewards computed against it.
replay::Episode TrainingIteration(agent::Agent& agent, world::GoalEnv& env,
                                  const ImagineFn& imagine,
                                  const CurriculumState& state,
                                  replay::ReplayBuffer& buffer,
                                  std::mt19937_64& rng,
                                  agent::GoalChoice* choice = nullptr);

// Curriculum driver for agent::Trainer. Goal selection and boundary
// evaluation draw from their own RNG streams and use a private environment,
// so with p = 1 the training stream is untouched.
class FoCurriculum {
 public:
  FoCurriculum(const world::WorldConfig& world, ImagineFn imagine,
               CurriculumConfig config, std::uint64_t seed);

  // Hooks bound to `policy_agent` for boundary evaluation. One boundary
  // rollout follows every cycle until the curriculum completes.
  agent::TrainHooks Hooks(const agent::Agent& policy_agent);

  const CurriculumState& state() const { return state_; }
  int boundary_evaluations() const { return boundary_evaluations_; }

 private:
  std::unique_ptr<world::ManipulationEnv> env_;
  ImagineFn imagine_;
  CurriculumState state_;
  std::mt19937_64 select_rng_;
  std::mt19937_64 boundary_rng_;
  int boundary_evaluations_ = 0;
};

struct TraceRow {
  int epoch = 0;
  int k_max = 2;
  double boundary_success_rate = 0.0;
  double imagined_fraction = 0.0;
};

// Header: epoch,k_max,boundary_success_rate,imagined_fraction
void WriteTraceCsv(std::ostream& out, const std::vector<TraceRow>& rows);

}  // namespace objgoal::curriculum

#endif  // OBJGOAL_CURRICULUM_CURRICULUM_H_
