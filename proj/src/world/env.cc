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

#include "objgoal/world/env.h"

#include <utility>

namespace objgoal::world {

ManipulationEnv::ManipulationEnv(WorldConfig config) : config_(std::move(config)) {
  config_.Validate();
}

EnvStart ManipulationEnv::Reset(std::uint64_t seed) {
  ResetResult r = world::Reset(config_, seed);
  state_ = r.state;
  auto obs = Observe(state_);
  return {{{obs.begin(), obs.end()}, ExtractObject(state_)}, r.goal};
}

EnvStep ManipulationEnv::Step(std::span<const double> action) {
  state_ = StepManip(state_, RobotAction::FromVector(action), config_);
  auto obs = Observe(state_);
  return {{obs.begin(), obs.end()}, ExtractObject(state_)};
}

LocomotionEnv::LocomotionEnv(WorldConfig config) : config_(std::move(config)) {
  config_.Validate();
}

EnvStart LocomotionEnv::Reset(std::uint64_t seed) {
  ResetResult r = world::Reset(config_, seed);
  state_ = Reduce(r.state);
  auto obs = Observe(state_);
  return {{{obs.begin(), obs.end()}, state_.position}, r.goal};
}

EnvStep LocomotionEnv::Step(std::span<const double> action) {
  state_ = StepObject(state_, ObjectAction::FromVector(action), config_);
  auto obs = Observe(state_);
  return {{obs.begin(), obs.end()}, state_.position};
}

}  // namespace objgoal::world
