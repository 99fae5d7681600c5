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


#include "objgoal/object/object_policy.h"

#include <sstream>
#include <string>
#include <vector>

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include "objgoal/error.h"
#include "objgoal/world/suite.h"

namespace objgoal::object {
namespace {

agent::AgentConfig TinyAgent() {
  agent::AgentConfig c;
  c.hidden_width = 16;
  c.hidden_layers = 2;
  c.batch_size = 32;
  return c;
}

agent::TrainSchedule TinySchedule() {
  agent::TrainSchedule s;
  s.epochs = 2;
  s.cycles_per_epoch = 2;
  s.episodes_per_cycle = 2;
  s.updates_per_cycle = 3;
  s.eval_rollouts = 4;
  s.buffer_episodes = 100;
  return s;
}

TEST(GreedyObjectPolicyTest, SolvesObstacleFreeLocomotion) {
  for (const char* name : {"Push-Simple", "PnP-Simple-v1", "PnP-Simple-v2"}) {
    const world::WorldConfig w = world::FindWorld(name);
    auto data = GenerateLocomotionDataset(
        GreedyObjectPolicy(w.max_step_displacement), w, 200, 7, false);
    ASSERT_EQ(data.size(), 200u);
    for (const LocomotionTrajectory& t : data) EXPECT_TRUE(t.success) << name;
  }
}

TEST(GreedyObjectPolicyTest, RejectsNonPositiveStep) {
  EXPECT_THROW(GreedyObjectPolicy(0.0), ConfigError);
}

TEST(DatasetTest, StartsInSpawnRegionAndGoalsInGoalRegion) {
  const world::WorldConfig w = world::FindWorld("Push-Obstacle");
  auto data = GenerateLocomotionDataset(
      GreedyObjectPolicy(w.max_step_displacement), w, 100, 3, false);
  for (const LocomotionTrajectory& t : data) {
    EXPECT_TRUE(w.spawn_region.ContainsClosed(t.path.col(0)));
    EXPECT_TRUE(w.goal_region.ContainsClosed(t.goal));
    EXPECT_EQ(t.horizon(), w.horizon);
  }
}

TEST(DatasetTest, FilterKeepsOnlyEpisodesEndingWithinEpsilon) {
  // A pillar in the middle of the table blocks part of the straight paths.
  world::WorldConfig w = world::FindWorld("Push-Simple");
  w.obstacles = {{{-0.06, -0.2, 0.0}, {0.06, -0.1, 0.1}}};
  const agent::Policy greedy = GreedyObjectPolicy(w.max_step_displacement);
  auto all = GenerateLocomotionDataset(greedy, w, 200, 5, false);
  auto kept = GenerateLocomotionDataset(greedy, w, 200, 5, true);
  int successes = 0;
  for (const LocomotionTrajectory& t : all) successes += t.success;
  ASSERT_GT(successes, 0);
  ASSERT_LT(successes, 200);
  EXPECT_EQ(static_cast<int>(kept.size()), successes);
  for (const LocomotionTrajectory& t : kept) {
    EXPECT_LE((t.path.col(t.path.cols() - 1) - t.goal).norm(), w.epsilon);
  }
}

TEST(DatasetTest, ZeroEpisodesGiveEmptyDataset) {
  const world::WorldConfig w = world::FindWorld("Push-Simple");
  EXPECT_TRUE(GenerateLocomotionDataset(GreedyObjectPolicy(0.05), w, 0, 1).empty());
}

TEST(DatasetTest, ThrowsWhenNothingSurvivesTheFilter) {
  const world::WorldConfig w = world::FindWorld("Push-Obstacle");
  agent::Policy idle = [](std::span<const double>, const world::Vec3&, bool,
                          std::mt19937_64&) { return std::vector<double>(3, 0.0); };
  EXPECT_THROW(GenerateLocomotionDataset(idle, w, 20, 1, true), Error);
}

TEST(DatasetTest, SameSeedSameDataset) {
  const world::WorldConfig w = world::FindWorld("PnP-Simple-v1");
  auto a = GenerateLocomotionDataset(GreedyObjectPolicy(0.05), w, 10, 11);
  auto b = GenerateLocomotionDataset(GreedyObjectPolicy(0.05), w, 10, 11);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].path, b[i].path);
}

TEST(DatasetCsvTest, RoundTripIsExact) {
  const world::WorldConfig w = world::FindWorld("PnP-Simple-v2");
  auto data = GenerateLocomotionDataset(GreedyObjectPolicy(0.05), w, 5, 2);
  std::stringstream buffer;
  WriteDatasetCsv(buffer, data);
  auto back = ReadDatasetCsv(buffer, w.epsilon);
  ASSERT_EQ(back.size(), data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    EXPECT_EQ(back[i].path, data[i].path);
    EXPECT_EQ(back[i].goal, data[i].goal);
    EXPECT_EQ(back[i].success, data[i].success);
  }
}

TEST(DatasetCsvTest, RejectsMalformedInput) {
  std::stringstream bad_header("a,b\n");
  EXPECT_THROW(ReadDatasetCsv(bad_header, 0.05), Error);
  std::stringstream short_row("episode_id,t,ox,oy,oz,gx,gy,gz\n0,0,1,2\n");
  EXPECT_THROW(ReadDatasetCsv(short_row, 0.05), Error);
  std::stringstream gap(
      "episode_id,t,ox,oy,oz,gx,gy,gz\n0,0,0,0,0,0,0,0\n0,2,0,0,0,0,0,0\n");
  EXPECT_THROW(ReadDatasetCsv(gap, 0.05), Error);
}

TEST(TrainObjectPolicyTest, SameSeedGivesIdenticalLearningCurve) {
  const world::WorldConfig w = world::FindWorld("Push-Simple");
  auto run = [&](std::uint64_t seed) {
    std::vector<agent::EpochStats> curve;
    TrainObjectPolicy(w, TinyAgent(), TinySchedule(), seed, &curve);
    std::ostringstream out;
    agent::WriteLearningCurveCsv(out, curve);
    return out.str();
  };
  const std::string a = run(4);
  EXPECT_EQ(a, run(4));
  EXPECT_NE(a, run(5));
  EXPECT_EQ(std::count(a.begin(), a.end(), '\n'), 3);
}

}  // namespace
}  // namespace objgoal::object
