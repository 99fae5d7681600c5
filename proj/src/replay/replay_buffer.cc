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

#include "objgoal/replay/replay_buffer.h"

#include <string>
#include <utility>

#include "objgoal/error.h"

namespace objgoal::replay {

void Episode::Validate(int horizon, int observation_size, int action_size) const {
  if (actions.cols() != horizon) {
    throw DimensionError("episode length", horizon, actions.cols());
  }
  if (actions.rows() != action_size) {
    throw DimensionError("episode action size", action_size, actions.rows());
  }
  if (observations.cols() != horizon + 1) {
    throw DimensionError("episode observations", horizon + 1, observations.cols());
  }
  if (observations.rows() != observation_size) {
    throw DimensionError("episode observation size", observation_size,
                         observations.rows());
  }
  if (rewards.size() != horizon) {
    throw DimensionError("episode rewards", horizon, rewards.size());
  }
  if (achieved.cols() != horizon + 1) {
    throw DimensionError("episode achieved path", horizon + 1, achieved.cols());
  }
}

ReplayBuffer::ReplayBuffer(std::size_t capacity, int horizon,
                           int observation_size, int action_size)
    : capacity_(capacity),
      horizon_(horizon),
      observation_size_(observation_size),
      action_size_(action_size) {
  if (capacity == 0) throw ConfigError("replay capacity must be >= 1");
  if (horizon < 1) throw ConfigError("replay horizon must be >= 1");
  episodes_.reserve(capacity);
}

void ReplayBuffer::Store(Episode episode) {
  episode.Validate(horizon_, observation_size_, action_size_);
  if (episodes_.size() < capacity_) {
    episodes_.push_back(std::move(episode));
  } else {
    episodes_[cursor_] = std::move(episode);
  }
  cursor_ = (cursor_ + 1) % capacity_;
}

Batch ReplayBuffer::Sample(int batch_size, double her_ratio,
                           const RewardFn& reward_fn,
                           std::mt19937_64& rng) const {
  if (episodes_.empty()) throw Error("cannot sample from an empty replay buffer");
  if (batch_size < 1) throw ConfigError("batch size must be >= 1");
  if (her_ratio < 0.0) throw ConfigError("her_ratio must be >= 0");
  const double future_p = her_ratio / (1.0 + her_ratio);

  Batch b;
  b.observations.resize(observation_size_, batch_size);
  b.next_observations.resize(observation_size_, batch_size);
  b.actions.resize(action_size_, batch_size);
  b.goals.resize(3, batch_size);
  b.achieved_next.resize(3, batch_size);
  b.rewards.resize(batch_size);
  b.relabeled.resize(batch_size);
  b.episode_index.resize(batch_size);
  b.step_index.resize(batch_size);
  b.goal_source.resize(batch_size);

  std::uniform_int_distribution<int> pick_episode(
      0, static_cast<int>(episodes_.size()) - 1);
  std::uniform_int_distribution<int> pick_step(0, horizon_ - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < batch_size; ++i) {
    const int e = pick_episode(rng);
    const int t = pick_step(rng);
    const Episode& ep = episodes_[e];
    b.episode_index[i] = e;
    b.step_index[i] = t;
    b.observations.col(i) = ep.observations.col(t);
    b.next_observations.col(i) = ep.observations.col(t + 1);
    b.actions.col(i) = ep.actions.col(t);
    b.achieved_next.col(i) = ep.achieved.col(t + 1);
    if (unit(rng) < future_p) {
      std::uniform_int_distribution<int> pick_future(t + 1, horizon_);
      const int source = pick_future(rng);
      b.goals.col(i) = ep.achieved.col(source);
      b.goal_source[i] = source;
      b.relabeled[i] = true;
    } else {
      b.goals.col(i) = ep.goal;
      b.goal_source[i] = -1;
      b.relabeled[i] = false;
    }
    b.rewards[i] = reward_fn(b.achieved_next.col(i), b.goals.col(i));
  }
  return b;
}

}  // namespace objgoal::replay
