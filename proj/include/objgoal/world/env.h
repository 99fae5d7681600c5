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

#ifndef OBJGOAL_WORLD_ENV_H_
#define OBJGOAL_WORLD_ENV_H_

#include <cstdint>
#include <span>
#include <vector>

#include "objgoal/world/world.h"

namespace objgoal::world {

struct EnvStep {
  std::vector<double> observation;
  Vec3 achieved = Vec3::Zero();  // object position o_t
};

struct EnvStart {
  EnvStep step;
  Goal goal;
};

// Stateful episode driver over one of the two MDPs of a world. The learning
// code only sees this interface.
class GoalEnv {
 public:
  virtual ~GoalEnv() = default;

  virtual int observation_size() const = 0;
  virtual int action_size() const = 0;
  virtual const WorldConfig& config() const = 0;

  virtual EnvStart Reset(std::uint64_t seed) = 0;
  virtual EnvStep Step(std::span<const double> action) = 0;

  int horizon() const { return config().horizon; }
  double epsilon() const { return config().epsilon; }
};

// Robot manipulation MDP: observation is Observe(ManipState), action is
// RobotAction.
class ManipulationEnv : public GoalEnv {
 public:
  explicit ManipulationEnv(WorldConfig config);

  int observation_size() const override { return kManipObservationSize; }
  int action_size() const override { return kRobotActionSize; }
  const WorldConfig& config() const override { return config_; }
  EnvStart Reset(std::uint64_t seed) override;
  EnvStep Step(std::span<const double> action) override;

  const ManipState& state() const { return state_; }

 private:
  WorldConfig config_;
  ManipState state_;
};

// Object locomotion MDP: the object is driven directly.
class LocomotionEnv : public GoalEnv {
 public:
  explicit LocomotionEnv(WorldConfig config);

  int observation_size() const override { return kObjectObservationSize; }
  int action_size() const override { return kObjectActionSize; }
  const WorldConfig& config() const override { return config_; }
  EnvStart Reset(std::uint64_t seed) override;
  EnvStep Step(std::span<const double> action) override;

  const ObjectState& state() const { return state_; }

 private:
  WorldConfig config_;
  ObjectState state_;
};

}  // namespace objgoal::world

#endif  // OBJGOAL_WORLD_ENV_H_
