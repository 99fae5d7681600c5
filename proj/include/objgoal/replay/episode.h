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

#ifndef OBJGOAL_REPLAY_EPISODE_H_
#define OBJGOAL_REPLAY_EPISODE_H_

#include <Eigen/Core>

#include "objgoal/world/geometry.h"

namespace objgoal::replay {

// One rollout (g, s_1, a_1, r_1, ..., s_T, a_T, r_T, s_{T+1}) with the
// achieved object path o_1 ... o_{T+1}. Column t holds step t (0-based).
struct Episode {
  world::Vec3 goal = world::Vec3::Zero();
  Eigen::MatrixXd observations;  // obs_dim x (T+1)
  Eigen::MatrixXd actions;       // act_dim x T
  Eigen::VectorXd rewards;       // T
  Eigen::Matrix3Xd achieved;     // 3 x (T+1)

  int horizon() const { return static_cast<int>(actions.cols()); }

  // Reward 0 at the final step.
  bool success() const {
    return rewards.size() > 0 && rewards[rewards.size() - 1] == 0.0;
  }

  // Throws DimensionError unless every array agrees with (T, dims).
  void Validate(int horizon, int observation_size, int action_size) const;
};

}  // namespace objgoal::replay

#endif  // OBJGOAL_REPLAY_EPISODE_H_
