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


#ifndef OBJGOAL_TESTS_SUPPORT_TELEPORT_ENV_H_
#define OBJGOAL_TESTS_SUPPORT_TELEPORT_ENV_H_

#include <algorithm>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "objgoal/agent/ddpg.h"
#include "objgoal/world/env.h"
#include "objgoal/world/world.h"

namespace objgoal::testing {

// Test double: the action is the next object position, affinely mapped from
// [-1, 1]^3 onto the object bounds. Observation is (object, object).
class TeleportEnv : public world::GoalEnv {
 public:
  explicit TeleportEnv(world::WorldConfig config)
      : config_(std::move(config)), bounds_(config_.ObjectBounds()) {}

  int observation_size() const override { return 6; }
  int action_size() const override { return 3; }
  const world::WorldConfig& config() const override { return config_; }

  world::EnvStart Reset(std::uint64_t seed) override {
    world::ResetResult r = world::Reset(config_, seed);
    object_ = r.state.object_pos;
    return {Observe(), r.goal};
  }

  world::EnvStep Step(std::span<const double> action) override {
    for (int i = 0; i < 3; ++i) {
      const double a = std::clamp(action[i], -1.0, 1.0);
      object_[i] = bounds_.min[i] + 0.5 * (a + 1.0) * (bounds_.max[i] - bounds_.min[i]);
    }
    return Observe();
  }

  // Inverse of the action mapping.
  std::vector<double> ActionFor(const world::Vec3& target) const {
    std::vector<double> a(3);
    for (int i = 0; i < 3; ++i) {
      const double span = bounds_.max[i] - bounds_.min[i];
      a[i] = span > 0 ? 2.0 * (target[i] - bounds_.min[i]) / span - 1.0 : 0.0;
    }
    return a;
  }

  // Reaches any goal inside the bounds in one step.
  agent::Policy OraclePolicy() const {
    return [this](std::span<const double>, const world::Vec3& goal, bool,
                  std::mt19937_64&) { return ActionFor(goal); };
  }

 private:
  world::EnvStep Observe() const {
    return {{object_[0], object_[1], object_[2], object_[0], object_[1], object_[2]},
            object_};
  }

  world::WorldConfig config_;
  world::Box bounds_;
  world::Vec3 object_ = world::Vec3::Zero();
};

}  // namespace objgoal::testing

#endif  // OBJGOAL_TESTS_SUPPORT_TELEPORT_ENV_H_
