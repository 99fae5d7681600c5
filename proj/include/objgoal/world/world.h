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

#ifndef OBJGOAL_WORLD_WORLD_H_
#define OBJGOAL_WORLD_WORLD_H_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "objgoal/world/geometry.h"

namespace objgoal::world {

enum class Mode { kPush, kPickAndPlace };

// A desk-scale table world. The table surface is z = 0; `table` bounds the
// reachable workspace (x, y extent and the ceiling in z). Object and gripper
// are axis-aligned cubes given by their half extents.
struct WorldConfig {
  std::string name;
  Mode mode = Mode::kPush;
  Box table{{-0.5, -0.35, 0.0}, {0.5, 0.35, 0.5}};
  std::vector<Box> obstacles;
  double object_half_extent = 0.025;
  double gripper_radius = 0.02;
  double grasp_radius = 0.05;
  // A push along one axis drags the object along the horizontal tangential
  // axes by the gripper's tangential motion, up to push_friction times the
  // normal push (a Coulomb-style stick/slip bound).
  double push_friction = 1.0;
  // Object spawn: x, y uniform in the region, z = spawn_region.min.z.
  Box spawn_region;
  Box goal_region;
  // Probability that a sampled goal is forced down to goal_region.min.z.
  double table_goal_probability = 0.0;
  double epsilon = 0.05;
  int horizon = 50;
  double max_step_displacement = 0.05;
  Vec3 gripper_home{0.0, -0.15, 0.1};

  double rest_height() const { return object_half_extent; }
  // Admissible region for the object / gripper centers.
  Box ObjectBounds() const;
  Box GripperBounds() const;

  // Throws ConfigError on an inconsistent world.
  void Validate() const;

  bool operator==(const WorldConfig&) const = default;
};

struct Goal {
  Vec3 position = Vec3::Zero();
};

// Full manipulation state s_t.
struct ManipState {
  Vec3 gripper_pos = Vec3::Zero();
  Vec3 gripper_vel = Vec3::Zero();  // m/step
  double gripper_opening = 0.0;     // [0, 1]
  Vec3 object_pos = Vec3::Zero();
  Vec3 object_vel = Vec3::Zero();
  bool grasped = false;

  Vec3 relative_pos() const { return object_pos - gripper_pos; }
  Vec3 relative_vel() const { return object_vel - gripper_vel; }

  bool operator==(const ManipState&) const = default;
};

// Reduced object-only state z_t.
struct ObjectState {
  Vec3 position = Vec3::Zero();
  Vec3 velocity = Vec3::Zero();

  bool operator==(const ObjectState&) const = default;
};

inline constexpr int kManipObservationSize = 20;
inline constexpr int kObjectObservationSize = 6;
inline constexpr int kRobotActionSize = 4;
inline constexpr int kObjectActionSize = 3;

// Desired gripper displacement and gripper command, each in [-1, 1].
struct RobotAction {
  Vec3 displacement = Vec3::Zero();
  double gripper = 0.0;

  // Throws NonFiniteError on NaN/inf, clips to [-1, 1].
  static RobotAction FromVector(std::span<const double> values);
};

struct ObjectAction {
  Vec3 displacement = Vec3::Zero();

  static ObjectAction FromVector(std::span<const double> values);
};

struct ResetResult {
  ManipState state;
  Goal goal;
};

// Object uniform in spawn_region (rejection-sampled away from obstacles and
// the gripper), goal uniform in goal_region, gripper at home. Throws
// ConfigError after 10000 rejected draws.
ResetResult Reset(const WorldConfig& config, std::uint64_t seed);

ManipState StepManip(const ManipState& state, const RobotAction& action,
                     const WorldConfig& config);

// Mocap-style object motion, clamped against obstacles and bounds. In push
// worlds the object stays at table height.
ObjectState StepObject(const ObjectState& state, const ObjectAction& action,
                       const WorldConfig& config);

// 0 if ||achieved - goal|| <= epsilon, else -1.
double SparseReward(const Vec3& achieved, const Vec3& goal, double epsilon);

inline Vec3 ExtractObject(const ManipState& state) { return state.object_pos; }

inline ObjectState Reduce(const ManipState& state) {
  return {state.object_pos, state.object_vel};
}

std::array<double, kManipObservationSize> Observe(const ManipState& state);
std::array<double, kObjectObservationSize> Observe(const ObjectState& state);

// Largest violation of containment / non-penetration for the state, 0 when
// the state is physically valid.
double ContainmentViolation(const ManipState& state, const WorldConfig& config);
double PenetrationDepth(const ManipState& state, const WorldConfig& config);
double PenetrationDepth(const ObjectState& state, const WorldConfig& config);

}  // namespace objgoal::world

#endif  // OBJGOAL_WORLD_WORLD_H_
