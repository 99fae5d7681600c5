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


#include "objgoal/imaginer/imaginer.h"

#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "objgoal/error.h"
#include "objgoal/world/suite.h"
#include "support/straight_lines.h"

namespace objgoal::imaginer {
namespace {

using testing::StraightLineCorpus;
using testing::StraightLinePoint;
using testing::UniformIn;

constexpr int kHorizon = 50;

world::Box Region() { return world::FindWorld("PnP-Simple-v2").goal_region; }

ImaginerModel TrainOnLines(int trajectories, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto corpus = StraightLineCorpus(trajectories, kHorizon, Region(), rng);
  return TrainImaginer(BuildTrainingSet(corpus, kHorizon), kHorizon, Region(),
                       ImaginerConfig{}, seed);
}

TEST(BuildTrainingSetTest, OneSamplePerStep) {
  std::mt19937_64 rng(1);
  auto corpus = StraightLineCorpus(3, kHorizon, Region(), rng);
  auto samples = BuildTrainingSet(corpus, kHorizon);
  ASSERT_EQ(samples.size(), 3u * kHorizon);
  for (const ImaginerSample& s : samples) {
    ASSERT_GE(s.k, 1);
    ASSERT_LE(s.k, kHorizon);
  }
  const ImaginerSample& s = samples[kHorizon + 4];
  EXPECT_EQ(s.k, 5);
  EXPECT_EQ(s.start, corpus[1].path.col(0));
  EXPECT_EQ(s.goal, corpus[1].goal);
  EXPECT_EQ(s.target, corpus[1].path.col(5));
}

TEST(BuildTrainingSetTest, RejectsEmptyAndShortInput) {
  EXPECT_THROW(BuildTrainingSet({}, kHorizon), Error);
  std::mt19937_64 rng(1);
  auto corpus = StraightLineCorpus(2, 10, Region(), rng);
  EXPECT_THROW(BuildTrainingSet(corpus, kHorizon), Error);
}

TEST(ImaginerTest, LearnsStraightLines) {
  const ImaginerModel model = TrainOnLines(400, 3);
  std::mt19937_64 rng(99);
  double sq = 0.0;
  double worst_end = 0.0;
  const int pairs = 1000;
  std::uniform_int_distribution<int> pick_k(1, kHorizon);
  for (int i = 0; i < pairs; ++i) {
    const world::Vec3 start = UniformIn(Region(), rng);
    const world::Vec3 goal = UniformIn(Region(), rng);
    const int k = pick_k(rng);
    sq += (Imagine(model, start, goal, k) -
           StraightLinePoint(start, goal, k, kHorizon)).squaredNorm();
    worst_end = std::max(worst_end,
                         (Imagine(model, start, goal, kHorizon) - goal).norm());
  }
  EXPECT_LT(std::sqrt(sq / pairs), 0.01);
  EXPECT_LT(worst_end, 0.10);
}

TEST(ImaginerTest, MemorizesASingleSample) {
  ImaginerSample s{{0.1, -0.1, 0.025}, {-0.2, 0.2, 0.2}, 7, {0.05, 0.0, 0.1}};
  std::vector<ImaginerSample> samples(64, s);
  ImaginerConfig config;
  config.max_epochs = 2000;
  config.patience = 2000;
  const ImaginerModel model = TrainImaginer(samples, kHorizon, Region(), config, 1);
  EXPECT_EQ(model.holdout_mse, 0.0);
  EXPECT_LT(MeanSquaredError(model, samples), 1e-6);
}

TEST(ImaginerTest, RejectsStepOutsideHorizon) {
  const ImaginerModel model = TrainOnLines(20, 1);
  const world::Vec3 o(0, 0, 0.025);
  EXPECT_THROW(Imagine(model, o, o, 0), Error);
  EXPECT_THROW(Imagine(model, o, o, kHorizon + 1), Error);
  EXPECT_NO_THROW(Imagine(model, o, o, kHorizon));
}

TEST(ImaginerTest, OutputIsClippedToBounds) {
  ImaginerModel model = TrainOnLines(20, 1);
  model.bounds = {{-0.01, -0.01, 0.0}, {0.01, 0.01, 0.03}};
  const world::Vec3 h = Imagine(model, {0.4, 0.25, 0.025}, {-0.4, -0.25, 0.25}, 30);
  EXPECT_TRUE(model.bounds.ContainsClosed(h));
}

TEST(ImaginerTest, SameSeedSameModel) {
  const ImaginerModel a = TrainOnLines(20, 5);
  const ImaginerModel b = TrainOnLines(20, 5);
  EXPECT_EQ(nn::Flatten(a.params.layers), nn::Flatten(b.params.layers));
  EXPECT_EQ(a.epochs_trained, b.epochs_trained);
}

TEST(ImaginerTest, CheckpointRoundTripPreservesPredictions) {
  const ImaginerModel model = TrainOnLines(20, 2);
  std::stringstream buffer;
  WriteImaginer(buffer, model);
  const ImaginerModel back = ReadImaginer(buffer);
  EXPECT_EQ(back.horizon, model.horizon);
  EXPECT_EQ(back.bounds, model.bounds);
  std::mt19937_64 rng(4);
  for (int i = 0; i < 20; ++i) {
    const world::Vec3 s = UniformIn(Region(), rng);
    const world::Vec3 g = UniformIn(Region(), rng);
    EXPECT_EQ(Imagine(back, s, g, 1 + i), Imagine(model, s, g, 1 + i));
  }
}

TEST(ImaginerTest, ReadRejectsGarbage) {
  std::stringstream buffer("not a model");
  EXPECT_THROW(ReadImaginer(buffer), Error);
}

TEST(ImaginerConfigTest, JsonRoundTripAndUnknownKeys) {
  ImaginerConfig c;
  c.hidden_width = 12;
  c.learning_rate = 3e-4;
  EXPECT_EQ(ImaginerConfig::FromJson(c.ToJson()), c);
  nlohmann::json j = c.ToJson();
  j["widht"] = 3;
  EXPECT_THROW(ImaginerConfig::FromJson(j), ConfigError);
  j = c.ToJson();
  j["holdout_fraction"] = 1.5;
  EXPECT_THROW(ImaginerConfig::FromJson(j), ConfigError);
}

}  // namespace
}  // namespace objgoal::imaginer
