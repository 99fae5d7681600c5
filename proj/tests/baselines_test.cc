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

#include <cmath>
#include <random>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "objgoal/curriculum/curriculum.h"
#include "objgoal/error.h"
#include "objgoal/seed.h"
#include "objgoal/world/env.h"
#include "objgoal/world/suite.h"
#include "support/straight_lines.h"

namespace objgoal::baselines {
namespace {

agent::AgentConfig SmallAgent() {
  agent::AgentConfig c;
  c.hidden_width = 16;
  c.hidden_layers = 2;
  c.batch_size = 32;
  return c;
}

agent::TrainSchedule SmallSchedule() {
  agent::TrainSchedule s;
  s.epochs = 2;
  s.cycles_per_epoch = 3;
  s.episodes_per_cycle = 2;
  s.updates_per_cycle = 4;
  s.eval_rollouts = 5;
  s.buffer_episodes = 100;
  return s;
}

std::string CurveCsv(const std::vector<agent::EpochStats>& curve) {
  std::ostringstream out;
  agent::WriteLearningCurveCsv(out, curve);
  return out.str();
}

TEST(AlgoTest, NamesRoundTrip) {
  for (Algo a : {Algo::kHer, Algo::kShaped, Algo::kRnd, Algo::kFo}) {
    EXPECT_EQ(ParseAlgo(AlgoName(a)), a);
  }
  EXPECT_THROW(ParseAlgo("sldr"), ConfigError);
}

TEST(ShapedRewardTest, NegativeDistance) {
  EXPECT_EQ(ShapedReward({0.1, 0.2, 0.3}, {0.1, 0.2, 0.3}), 0.0);
  EXPECT_DOUBLE_EQ(ShapedReward({0.3, 0.0, 0.0}, {0.0, 0.4, 0.0}), -0.5);
}

TEST(ShapedRewardTest, BoundTranslationAndLipschitz) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-0.3, 0.3);
  auto draw = [&] { return world::Vec3(u(rng), u(rng), u(rng)); };
  for (int i = 0; i < 10000; ++i) {
    const world::Vec3 o = draw(), g = draw(), c = draw(), o2 = draw();
    const double r = ShapedReward(o, g);
    if ((o - g).norm() <= 1.0) EXPECT_GE(r, -1.0);
    EXPECT_NEAR(ShapedReward(o + c, g + c), r, 1e-12);
    EXPECT_LE(std::abs(ShapedReward(o2, g) - r), (o2 - o).norm() + 1e-12);
  }
}

TEST(RndModelTest, FreshModelGivesPositiveBoundedBonuses) {
  RndModel model(6, {}, 1);
  Eigen::MatrixXd states(6, 2);
  states.col(0).setConstant(0.5);
  states.col(1).setConstant(-1.0);
  model.ObserveErrors(model.Errors(states));
  const Eigen::VectorXd bonus = model.Bonus(states);
  for (double b : bonus) {
    EXPECT_GT(b, 0.0);
    EXPECT_LE(b, model.config().bonus_cap);
  }
}

TEST(RndModelTest, BonusDecaysOnAFixedStateSet) {
  RndModel model(20, {}, 2);
  std::mt19937_64 rng(4);
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::MatrixXd states(20, 64);
  for (int i = 0; i < states.size(); ++i) states.data()[i] = n(rng);
  const double initial = model.BonusAndTrain(states).mean();
  for (int step = 1; step < 1000; ++step) model.BonusAndTrain(states);
  EXPECT_LT(model.Bonus(states).mean(), 0.1 * initial);
}

TEST(RndModelTest, TargetNetworkIsFrozen) {
  RndModel model(5, {}, 3);
  const Eigen::MatrixXd states = Eigen::MatrixXd::Random(5, 16);
  const Eigen::MatrixXd before = model.TargetEmbedding(states);
  const auto target_before = nn::Flatten(model.target_params().layers);
  const auto predictor_before = nn::Flatten(model.predictor_params().layers);
  for (int i = 0; i < 50; ++i) model.BonusAndTrain(states);
  EXPECT_EQ(model.TargetEmbedding(states), before);
  EXPECT_EQ(nn::Flatten(model.target_params().layers), target_before);
  EXPECT_NE(nn::Flatten(model.predictor_params().layers), predictor_before);
}

TEST(RndModelTest, ZeroScaleGivesZeroBonus) {
  RndConfig c;
  c.bonus_scale = 0.0;
  RndModel model(4, c, 1);
  EXPECT_TRUE(model.BonusAndTrain(Eigen::MatrixXd::Random(4, 8)).isZero(0.0));
}

TEST(RndModelTest, RejectsBadInput) {
  RndModel model(4, {}, 1);
  EXPECT_THROW(model.Errors(Eigen::MatrixXd::Zero(3, 2)), DimensionError);
  Eigen::MatrixXd bad = Eigen::MatrixXd::Zero(4, 2);
  bad(1, 1) = std::nan("");
  EXPECT_THROW(model.Errors(bad), NonFiniteError);
}

TEST(RndConfigTest, JsonRoundTrip) {
  RndConfig c;
  c.bonus_scale = 0.25;
  c.embedding_size = 8;
  EXPECT_EQ(RndConfig::FromJson(c.ToJson()), c);
  nlohmann::json j = c.ToJson();
  j["scale"] = 1;
  EXPECT_THROW(RndConfig::FromJson(j), ConfigError);
  j = c.ToJson();
  j["bonus_cap"] = -1;
  EXPECT_THROW(RndConfig::FromJson(j), ConfigError);
}

TEST(TrainBaselineTest, RndWithZeroScaleMatchesHer) {
  const world::WorldConfig w = world::FindWorld("PnP-Simple-v1");
  RndConfig silent;
  silent.bonus_scale = 0.0;
  BaselineRun her = TrainBaseline(Algo::kHer, w, SmallAgent(), SmallSchedule(), {}, 9);
  BaselineRun rnd =
      TrainBaseline(Algo::kRnd, w, SmallAgent(), SmallSchedule(), silent, 9);
  EXPECT_EQ(CurveCsv(rnd.curve), CurveCsv(her.curve));
  EXPECT_EQ(nn::Flatten(rnd.agent.actor().layers),
            nn::Flatten(her.agent.actor().layers));
}

TEST(TrainBaselineTest, AlgorithmsDiffer) {
  const world::WorldConfig w = world::FindWorld("PnP-Simple-v1");
  const std::string her =
      CurveCsv(TrainBaseline(Algo::kHer, w, SmallAgent(), SmallSchedule(), {}, 9).curve);
  EXPECT_NE(CurveCsv(TrainBaseline(Algo::kRnd, w, SmallAgent(), SmallSchedule(), {}, 9).curve),
            her);
  EXPECT_NE(CurveCsv(TrainBaseline(Algo::kShaped, w, SmallAgent(), SmallSchedule(), {}, 9).curve),
            her);
  EXPECT_THROW(TrainBaseline(Algo::kFo, w, SmallAgent(), SmallSchedule(), {}, 9),
               ConfigError);
}

TEST(TrainBaselineTest, FoWithPEqualOneMatchesHer) {
  const world::WorldConfig w = world::FindWorld("PnP-Simple-v1");
  const std::uint64_t seed = 21;
  BaselineRun her = TrainBaseline(Algo::kHer, w, SmallAgent(), SmallSchedule(), {}, seed);

  world::ManipulationEnv env(w);
  agent::Agent fo_agent(env.observation_size(), env.action_size(), SmallAgent(),
                        DeriveSeed(seed, stream::kAgentInit));
  agent::Trainer trainer(env, fo_agent, SmallSchedule(), seed);
  curriculum::CurriculumConfig config;
  config.p = 1.0;
  curriculum::FoCurriculum fo(
      w,
      [h = w.horizon](const world::Vec3& s, const world::Vec3& g, int k) {
        return testing::StraightLinePoint(s, g, k, h);
      },
      config, seed);
  const agent::TrainHooks hooks = fo.Hooks(fo_agent);
  std::vector<agent::EpochStats> curve;
  for (int e = 0; e < SmallSchedule().epochs; ++e) curve.push_back(trainer.RunEpoch(hooks));

  EXPECT_EQ(CurveCsv(curve), CurveCsv(her.curve));
  EXPECT_EQ(nn::Flatten(fo_agent.actor().layers), nn::Flatten(her.agent.actor().layers));
  EXPECT_EQ(nn::Flatten(fo_agent.critic().layers), nn::Flatten(her.agent.critic().layers));
  EXPECT_GT(fo.boundary_evaluations(), 0);
}

}  // namespace
}  // namespace objgoal::baselines
