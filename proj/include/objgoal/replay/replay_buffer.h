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

#ifndef OBJGOAL_REPLAY_REPLAY_BUFFER_H_
#define OBJGOAL_REPLAY_REPLAY_BUFFER_H_

#include <cstddef>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Core>

#include "objgoal/replay/episode.h"

namespace objgoal::replay {

// r = R(o_{t+1}, g)
using RewardFn =
    std::function<double(const world::Vec3& achieved_next, const world::Vec3& goal)>;

// Columns are transitions.
struct Batch {
  Eigen::MatrixXd observations;
  Eigen::MatrixXd next_observations;
  Eigen::MatrixXd actions;
  Eigen::Matrix3Xd goals;
  Eigen::Matrix3Xd achieved_next;
  Eigen::VectorXd rewards;
  std::vector<bool> relabeled;
  std::vector<int> episode_index;
  std::vector<int> step_index;
  // Index into the episode's achieved path the goal was taken from, -1 for
  // the original goal.
  std::vector<int> goal_source;

  int size() const { return static_cast<int>(rewards.size()); }
};

// Fixed-capacity FIFO of whole episodes.
class ReplayBuffer {
 public:
  ReplayBuffer(std::size_t capacity, int horizon, int observation_size,
               int action_size);

  // Throws DimensionError for a malformed episode.
  void Store(Episode episode);

  // Samples transitions uniformly over (episode, t). A fraction
  // her_ratio / (1 + her_ratio) of them gets its goal replaced by an achieved
  // position strictly after t in the same episode ("future" relabeling).
  // Rewards of every sampled transition are recomputed with reward_fn.
  Batch Sample(int batch_size, double her_ratio, const RewardFn& reward_fn,
               std::mt19937_64& rng) const;

  std::size_t size() const { return episodes_.size(); }
  std::size_t capacity() const { return capacity_; }
  std::size_t cursor() const { return cursor_; }
  bool empty() const { return episodes_.empty(); }
  int horizon() const { return horizon_; }
  const Episode& episode(std::size_t i) const { return episodes_.at(i); }

 private:
  std::size_t capacity_;
  int horizon_;
  int observation_size_;
  int action_size_;
  std::vector<Episode> episodes_;
  std::size_t cursor_ = 0;
};

}  // namespace objgoal::replay

#endif  // OBJGOAL_REPLAY_REPLAY_BUFFER_H_
