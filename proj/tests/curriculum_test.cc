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

#include <random>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "objgoal/error.h"
#include "objgoal/world/suite.h"
#include "support/straight_lines.h"
#include "support/teleport_env.h"

namespace objgoal::curriculum {
namespace {

constexpr int kHorizon = 50;

// Imagined goal k steps along the straight line from o_1 to g.
ImagineFn LineImagine(int horizon) {
  return [horizon](const world::Vec3& start, const world::Vec3& goal, int k) {
    return testing::StraightLinePoint(start, goal, k, horizon);
  };
}

CurriculumState AdvancedTo(int k_max, CurriculumConfig config = {}) {
  CurriculumState state(kHorizon, config);
  while (state.k_max() < k_max) {
    for (int i = 0; i < config.min_fill; ++i) state.RecordBoundary(true);
    state.MaybeAdvance();
  }
  return state;
}

TEST(SelectGoalTest, ImaginedFractionAndUniformK) {
  const CurriculumState state(kHorizon, {});
  const ImagineFn imagine = LineImagine(kHorizon);
  std::mt19937_64 rng(17);
  const world::Vec3 start(0, 0, 0.025), goal(0.3, 0.1, 0.025);
  const int n = 100000;
  int imagined = 0;
  int k_counts[3] = {0, 0, 0};
  for (int i = 0; i < n; ++i) {
    const agent::GoalChoice c = SelectGoal(state, imagine, start, goal, rng);
    if (!c.imagined) {
      EXPECT_EQ(c.goal, goal);
      EXPECT_FALSE(c.k.has_value());
      continue;
    }
    ++imagined;
    ASSERT_TRUE(c.k.has_value());
    ASSERT_GE(*c.k, 1);
    ASSERT_LE(*c.k, 2);
    ++k_counts[*c.k];
    EXPECT_EQ(c.goal, imagine(start, goal, *c.k));
  }
  EXPECT_NEAR(static_cast<double>(imagined) / n, 0.8, 0.01);
  EXPECT_NEAR(static_cast<double>(k_counts[1]) / imagined, 0.5, 0.02);
  EXPECT_NEAR(static_cast<double>(k_counts[2]) / imagined, 0.5, 0.02);
}

TEST(SelectGoalTest, PEqualOneAlwaysKeepsTheOriginalGoal) {
  CurriculumConfig config;
  config.p = 1.0;
  const CurriculumState state(kHorizon, config);
  std::mt19937_64 rng(1);
  const world::Vec3 goal(0.1, 0.2, 0.3);
  for (int i = 0; i < 1000; ++i) {
    const agent::GoalChoice c =
        SelectGoal(state, LineImagine(kHorizon), goal * 0.5, goal, rng);
    EXPECT_FALSE(c.imagined);
    EXPECT_EQ(c.goal, goal);
  }
}

TEST(SelectGoalTest, KStaysWithinFrontierAsTheCurriculumGrows) {
  std::mt19937_64 rng(3);
  CurriculumState state(kHorizon, {});
  int previous = state.k_max();
  std::bernoulli_distribution coin(0.6);
  while (!state.complete()) {
    for (int i = 0; i < 50; ++i) {
      const agent::GoalChoice c =
          SelectGoal(state, LineImagine(kHorizon), {}, {0.1, 0, 0}, rng);
      if (!c.imagined) continue;
      ASSERT_GE(*c.k, 1);
      ASSERT_LE(*c.k, std::min(state.k_max(), kHorizon));
    }
    state.RecordBoundary(coin(rng));
    state.MaybeAdvance();
    ASSERT_GE(state.k_max(), previous);
    ASSERT_LE(state.k_max(), previous + 1);
    previous = state.k_max();
  }
  EXPECT_EQ(state.k_max(), kHorizon + 1);
}

TEST(SelectGoalTest, FrontierSamplingUsesTheLargestStep) {
  CurriculumConfig config;
  config.p = 0.0;
  config.sampling = KSampling::kFrontierOnly;
  const CurriculumState state = AdvancedTo(7, config);
  std::mt19937_64 rng(2);
  for (int i = 0; i < 100; ++i) {
    EXPECT_EQ(SelectGoal(state, LineImagine(kHorizon), {}, {}, rng).k, 7);
  }
}

TEST(SelectGoalTest, BehaviourAfterCompletion) {
  CurriculumConfig config;
  config.p = 0.0;
  const CurriculumState mixing = AdvancedTo(kHorizon + 1, config);
  ASSERT_TRUE(mixing.complete());
  std::mt19937_64 rng(2);
  bool saw_last = false;
  for (int i = 0; i < 2000; ++i) {
    const agent::GoalChoice c = SelectGoal(mixing, LineImagine(kHorizon), {}, {}, rng);
    ASSERT_TRUE(c.imagined);
    ASSERT_LE(*c.k, kHorizon);
    saw_last |= *c.k == kHorizon;
  }
  EXPECT_TRUE(saw_last);

  config.mix_after_complete = false;
  const CurriculumState done = AdvancedTo(kHorizon + 1, config);
  EXPECT_FALSE(SelectGoal(done, LineImagine(kHorizon), {}, {}, rng).imagined);
}

TEST(CurriculumStateTest, StartsAtTwo) {
  EXPECT_EQ(CurriculumState(kHorizon, {}).k_max(), 2);
  EXPECT_EQ(CurriculumState(1, {}).k_max(), 2);
  EXPECT_TRUE(CurriculumState(1, {}).complete());
}

TEST(CurriculumStateTest, WindowKeepsTheMostRecentOutcomes) {
  CurriculumConfig config;
  config.window = 5;
  config.min_fill = 5;
  CurriculumState state(kHorizon, config);
  for (int i = 0; i < 5; ++i) state.RecordBoundary(true);
  for (int i = 0; i < 4; ++i) state.RecordBoundary(false);
  EXPECT_EQ(state.window().size(), 5u);
  EXPECT_DOUBLE_EQ(state.window_success_rate(), 0.2);
}

TEST(CurriculumStateTest, AdvanceRules) {
  CurriculumConfig config;
  config.threshold = 0.25;
  config.window = 20;
  config.min_fill = 10;
  CurriculumState state(kHorizon, config);
  for (int i = 0; i < 9; ++i) state.RecordBoundary(true);
  EXPECT_FALSE(state.MaybeAdvance());  // not enough outcomes
  for (int i = 0; i < 27; ++i) state.RecordBoundary(false);
  EXPECT_FALSE(state.MaybeAdvance());  // 0 / 20
  for (int i = 0; i < 4; ++i) state.RecordBoundary(true);
  EXPECT_DOUBLE_EQ(state.window_success_rate(), 0.2);
  EXPECT_FALSE(state.MaybeAdvance());
  state.RecordBoundary(true);
  EXPECT_DOUBLE_EQ(state.window_success_rate(), 0.25);
  EXPECT_TRUE(state.MaybeAdvance());
  EXPECT_EQ(state.k_max(), 3);
  EXPECT_TRUE(state.window().empty());
}

TEST(CurriculumStateTest, StopsAtHorizonPlusOne) {
  CurriculumState state = AdvancedTo(kHorizon + 1);
  for (int i = 0; i < 20; ++i) state.RecordBoundary(true);
  EXPECT_FALSE(state.MaybeAdvance());
  EXPECT_EQ(state.k_max(), kHorizon + 1);
}

TEST(CurriculumConfigTest, Validation) {
  CurriculumConfig c;
  c.p = 1.1;
  EXPECT_THROW(CurriculumState(kHorizon, c), ConfigError);
  c = {};
  c.min_fill = 30;
  EXPECT_THROW(c.Validate(), ConfigError);
  EXPECT_THROW(CurriculumState(0, {}), ConfigError);
}

TEST(CurriculumConfigTest, JsonRoundTrip) {
  CurriculumConfig c;
  c.p = 0.5;
  c.sampling = KSampling::kFrontierOnly;
  EXPECT_EQ(CurriculumConfig::FromJson(c.ToJson()), c);
  nlohmann::json j = c.ToJson();
  j["sampling"] = "sideways";
  EXPECT_THROW(CurriculumConfig::FromJson(j), ConfigError);
  j = c.ToJson();
  j["treshold"] = 0.3;
  EXPECT_THROW(CurriculumConfig::FromJson(j), ConfigError);
}

// A policy that teleports the object onto any goal succeeds at every
// boundary, so each step of k_max costs exactly min_fill evaluations.
TEST(EvaluateBoundaryTest, TeleportingOracleCompletesTheCurriculum) {
  world::WorldConfig w = world::FindWorld("PnP-Simple-v1");
  testing::TeleportEnv env(w);
  CurriculumConfig config;
  CurriculumState state(w.horizon, config);
  std::mt19937_64 rng(5);
  int evaluations = 0;
  int previous = state.k_max();
  while (!state.complete()) {
    ASSERT_TRUE(EvaluateBoundary(state, env.OraclePolicy(), env,
                                 LineImagine(w.horizon), rng));
    ++evaluations;
    state.MaybeAdvance();
    ASSERT_GE(state.k_max(), previous);
    previous = state.k_max();
    ASSERT_LE(evaluations, config.window * (w.horizon - 1));
  }
  EXPECT_EQ(state.k_max(), w.horizon + 1);
  EXPECT_EQ(evaluations, config.min_fill * (w.horizon - 1));
  EXPECT_THROW(EvaluateBoundary(state, env.OraclePolicy(), env,
                                LineImagine(w.horizon), rng),
               Error);
}

TEST(EvaluateBoundaryTest, IdlePolicyRecordsFailures) {
  world::WorldConfig w = world::FindWorld("Push-Obstacle");
  testing::TeleportEnv env(w);
  agent::Policy stay = [&env](std::span<const double> obs, const world::Vec3&,
                              bool, std::mt19937_64&) {
    return env.ActionFor({obs[0], obs[1], obs[2]});
  };
  CurriculumState state = AdvancedTo(40);
  std::mt19937_64 rng(5);
  for (int i = 0; i < 30; ++i) {
    EvaluateBoundary(state, stay, env, LineImagine(w.horizon), rng);
  }
  EXPECT_EQ(state.window_success_rate(), 0.0);
  EXPECT_FALSE(state.MaybeAdvance());
}

TEST(TrainingIterationTest, StoresTheSelectedGoal) {
  const world::WorldConfig w = world::FindWorld("PnP-Simple-v1");
  world::ManipulationEnv env(w);
  agent::AgentConfig ac;
  ac.hidden_width = 8;
  ac.hidden_layers = 1;
  agent::Agent agent(env.observation_size(), env.action_size(), ac, 1);
  replay::ReplayBuffer buffer(10, w.horizon, env.observation_size(),
                              env.action_size());
  CurriculumConfig config;
  config.p = 0.5;
  const CurriculumState state = AdvancedTo(10, config);
  std::mt19937_64 rng(8);
  int imagined = 0;
  for (int i = 0; i < 20; ++i) {
    agent::GoalChoice choice;
    const replay::Episode ep = TrainingIteration(
        agent, env, LineImagine(w.horizon), state, buffer, rng, &choice);
    imagined += choice.imagined;
    EXPECT_EQ(ep.goal, choice.goal);
    EXPECT_EQ(buffer.episode((buffer.cursor() + 9) % 10).goal, choice.goal);
    for (int t = 0; t < w.horizon; ++t) {
      EXPECT_EQ(ep.rewards[t],
                world::SparseReward(ep.achieved.col(t + 1), choice.goal, w.epsilon));
    }
  }
  EXPECT_GT(imagined, 0);
  EXPECT_LT(imagined, 20);
}

TEST(TraceCsvTest, Header) {
  std::ostringstream out;
  WriteTraceCsv(out, {{0, 2, 0.5, 0.8}});
  EXPECT_EQ(out.str(), "epoch,k_max,boundary_success_rate,imagined_fraction\n0,2,0.5,0.80000000000000004\n");
}

}  // namespace
}  // namespace objgoal::curriculum
