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

#include "objgoal/world/world.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "objgoal/error.h"

namespace objgoal::world {
namespace {

constexpr int kMaxRejections = 10000;

std::vector<Box> InflateAll(const std::vector<Box>& boxes, double margin) {
  std::vector<Box> out;
  out.reserve(boxes.size());
  for (const Box& b : boxes) out.push_back(b.Inflated(margin));
  return out;
}

bool InsideAny(const Vec3& p, const std::vector<Box>& boxes) {
  for (const Box& b : boxes) {
    if (b.ContainsOpen(p)) return true;
  }
  return false;
}

Box Around(const Vec3& center, double half) {
  return {center.array() - half, center.array() + half};
}

Vec3 ClipUnit(std::span<const double> values, int offset) {
  Vec3 v;
  for (int i = 0; i < 3; ++i) v[i] = std::clamp(values[offset + i], -1.0, 1.0);
  return v;
}

void CheckFinite(std::span<const double> values, const char* what) {
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw NonFiniteError(std::string("non-finite ") + what);
    }
  }
}

// Lets an unsupported object fall onto the table, an obstacle top, or the
// gripper.
void Settle(ManipState& s, const WorldConfig& config,
            const std::vector<Box>& object_blockers) {
  const Box bounds = config.ObjectBounds();
  std::vector<Box> blockers = object_blockers;
  blockers.push_back(Around(s.gripper_pos, config.gripper_radius +
                                               config.object_half_extent));
  s.object_pos[2] = SweepAxis(s.object_pos, 2, -1e3, blockers, bounds.min[2],
                              bounds.max[2]);
}

}  // namespace

Box WorldConfig::ObjectBounds() const {
  return table.Inflated(-object_half_extent);
}

Box WorldConfig::GripperBounds() const {
  return table.Inflated(-gripper_radius);
}

void WorldConfig::Validate() const {
  auto fail = [&](const std::string& why) {
    throw ConfigError("world '" + name + "': " + why);
  };
  if (!(epsilon > 0.0)) fail("epsilon must be > 0");
  if (horizon < 1) fail("horizon must be >= 1");
  if (!(max_step_displacement > 0.0)) fail("max_step_displacement must be > 0");
  if (!(object_half_extent > 0.0) || !(gripper_radius > 0.0)) {
    fail("object and gripper sizes must be > 0");
  }
  if (!(grasp_radius > 0.0)) fail("grasp_radius must be > 0");
  if (!(push_friction >= 0.0)) fail("push_friction must be >= 0");
  if (table_goal_probability < 0.0 || table_goal_probability > 1.0) {
    fail("table_goal_probability must lie in [0, 1]");
  }
  if ((table.max.array() <= table.min.array()).any()) fail("empty table");
  const Box obj = ObjectBounds();
  for (const auto& [region, label] :
       {std::pair{spawn_region, "spawn_region"}, {goal_region, "goal_region"}}) {
    if ((region.max.array() < region.min.array()).any()) {
      fail(std::string(label) + " has min > max");
    }
    if (!obj.ContainsClosed(region.min) || !obj.ContainsClosed(region.max)) {
      fail(std::string(label) + " is not inside the table bounds");
    }
  }
  if (!GripperBounds().ContainsClosed(gripper_home)) {
    fail("gripper_home outside the table bounds");
  }
  const std::vector<Box> blocked = InflateAll(obstacles, object_half_extent);
  auto has_free_point = [&](const Box& region, double z) {
    constexpr int kGrid = 21;
    for (int i = 0; i < kGrid; ++i) {
      for (int j = 0; j < kGrid; ++j) {
        Vec3 p(region.min[0] + (region.max[0] - region.min[0]) * i / (kGrid - 1),
               region.min[1] + (region.max[1] - region.min[1]) * j / (kGrid - 1),
               z);
        if (!InsideAny(p, blocked)) return true;
      }
    }
    return false;
  };
  if (!has_free_point(spawn_region, spawn_region.min[2])) {
    fail("obstacles cover the spawn region");
  }
  if (!has_free_point(goal_region, goal_region.max[2]) &&
      !has_free_point(goal_region, goal_region.min[2])) {
    fail("obstacles cover the goal region");
  }
}

RobotAction RobotAction::FromVector(std::span<const double> values) {
  if (values.size() != kRobotActionSize) {
    throw DimensionError("robot action", kRobotActionSize, values.size());
  }
  CheckFinite(values, "robot action");
  return {ClipUnit(values, 0), std::clamp(values[3], -1.0, 1.0)};
}

ObjectAction ObjectAction::FromVector(std::span<const double> values) {
  if (values.size() != kObjectActionSize) {
    throw DimensionError("object action", kObjectActionSize, values.size());
  }
  CheckFinite(values, "object action");
  return {ClipUnit(values, 0)};
}

ResetResult Reset(const WorldConfig& config, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto uniform_in = [&](const Box& b) {
    Vec3 p;
    for (int i = 0; i < 3; ++i) p[i] = b.min[i] + (b.max[i] - b.min[i]) * unit(rng);
    return p;
  };
  const std::vector<Box> blocked =
      InflateAll(config.obstacles, config.object_half_extent);
  const Box gripper_zone = Around(
      config.gripper_home, config.gripper_radius + config.object_half_extent);

  ResetResult result;
  ManipState& s = result.state;
  s.gripper_pos = config.gripper_home;
  s.gripper_opening = config.mode == Mode::kPickAndPlace ? 1.0 : 0.0;

  int tries = 0;
  for (;; ++tries) {
    if (tries >= kMaxRejections) {
      throw ConfigError("world '" + config.name +
                        "': object spawn rejection sampling exhausted");
    }
    Vec3 p = uniform_in(config.spawn_region);
    p[2] = config.spawn_region.min[2];
    if (InsideAny(p, blocked) || gripper_zone.ContainsOpen(p)) continue;
    s.object_pos = p;
    break;
  }
  for (tries = 0;; ++tries) {
    if (tries >= kMaxRejections) {
      throw ConfigError("world '" + config.name +
                        "': goal rejection sampling exhausted");
    }
    Vec3 g = uniform_in(config.goal_region);
    if (unit(rng) < config.table_goal_probability) g[2] = config.goal_region.min[2];
    if (InsideAny(g, blocked)) continue;
    result.goal.position = g;
    break;
  }
  return result;
}

ManipState StepManip(const ManipState& state, const RobotAction& action,
                     const WorldConfig& config) {
  CheckFinite(std::span<const double>(action.displacement.data(), 3),
              "robot action");
  if (!std::isfinite(action.gripper)) throw NonFiniteError("non-finite gripper command");

  ManipState next = state;
  const bool pnp = config.mode == Mode::kPickAndPlace;
  const double r = config.gripper_radius;
  const double h = config.object_half_extent;
  const Box gripper_bounds = config.GripperBounds();
  const Box object_bounds = config.ObjectBounds();
  const std::vector<Box> gripper_blockers = InflateAll(config.obstacles, r);
  const std::vector<Box> object_blockers = InflateAll(config.obstacles, h);

  Vec3 disp;
  for (int i = 0; i < 3; ++i) {
    disp[i] = std::clamp(action.displacement[i], -1.0, 1.0) *
              config.max_step_displacement;
  }

  if (pnp) {
    const double cmd = std::clamp(action.gripper, -1.0, 1.0);
    next.gripper_opening = std::clamp(state.gripper_opening + 0.5 * cmd, 0.0, 1.0);
    const double dist = (state.object_pos - state.gripper_pos).norm();
    if (cmd < 0.0 && !next.grasped && dist < config.grasp_radius) {
      next.grasped = true;
    } else if (cmd > 0.0 && next.grasped) {
      next.grasped = false;
    }
  } else {
    next.grasped = false;
  }

  Vec3& g = next.gripper_pos;
  Vec3& o = next.object_pos;
  Vec3 normal_push = Vec3::Zero();
  for (int axis = 0; axis < 3; ++axis) {
    const double d = disp[axis];
    if (d == 0.0) continue;
    const double g_target = SweepAxis(g, axis, d, gripper_blockers,
                                      gripper_bounds.min[axis],
                                      gripper_bounds.max[axis]);
    if (next.grasped) {
      const double o_target = SweepAxis(o, axis, d, object_blockers,
                                        object_bounds.min[axis],
                                        object_bounds.max[axis]);
      const double dg = g_target - g[axis];
      const double dobj = o_target - o[axis];
      const double moved = d > 0.0 ? std::min(dg, dobj) : std::max(dg, dobj);
      g[axis] += moved;
      o[axis] += moved;
      continue;
    }
    // The object, inflated by the gripper size, blocks the gripper; hitting
    // it pushes the object along this axis by the remaining travel.
    const Box contact = Around(o, h + r);
    const int a1 = (axis + 1) % 3;
    const int a2 = (axis + 2) % 3;
    const bool aligned = g[a1] > contact.min[a1] && g[a1] < contact.max[a1] &&
                         g[a2] > contact.min[a2] && g[a2] < contact.max[a2];
    const bool pushable = pnp || axis != 2;
    if (aligned && d > 0.0 && g[axis] <= contact.min[axis] + kContactTolerance &&
        g_target > contact.min[axis]) {
      double pushed = 0.0;
      if (pushable) {
        const double remaining = g_target - contact.min[axis];
        pushed = SweepAxis(o, axis, remaining, object_blockers,
                           object_bounds.min[axis], object_bounds.max[axis]) -
                 o[axis];
        o[axis] += pushed;
      }
      normal_push[axis] = pushed;
      g[axis] = std::max(g[axis], contact.min[axis] + pushed);
    } else if (aligned && d < 0.0 && g[axis] >= contact.max[axis] - kContactTolerance &&
               g_target < contact.max[axis]) {
      double pushed = 0.0;
      if (pushable) {
        const double remaining = g_target - contact.max[axis];
        pushed = SweepAxis(o, axis, remaining, object_blockers,
                           object_bounds.min[axis], object_bounds.max[axis]) -
                 o[axis];
        o[axis] += pushed;
      }
      normal_push[axis] = pushed;
      g[axis] = std::min(g[axis], contact.max[axis] + pushed);
    } else {
      g[axis] = g_target;
    }
  }
  // Friction drag along the horizontal axes that carried no normal push.
  const double normal = std::abs(normal_push[0]) + std::abs(normal_push[1]);
  if (!next.grasped && normal > 0.0 && config.push_friction > 0.0) {
    const double limit = config.push_friction * normal;
    for (int axis = 0; axis < 2; ++axis) {
      if (normal_push[axis] != 0.0) continue;
      const double want = std::clamp(g[axis] - state.gripper_pos[axis], -limit, limit);
      if (want == 0.0) continue;
      o[axis] = SweepAxis(o, axis, want, object_blockers, object_bounds.min[axis],
                          object_bounds.max[axis]);
    }
  }
  if (pnp && !next.grasped) Settle(next, config, object_blockers);

  next.gripper_vel = next.gripper_pos - state.gripper_pos;
  next.object_vel = next.object_pos - state.object_pos;
  return next;
}

ObjectState StepObject(const ObjectState& state, const ObjectAction& action,
                       const WorldConfig& config) {
  CheckFinite(std::span<const double>(action.displacement.data(), 3),
              "object action");
  const Box bounds = config.ObjectBounds();
  const std::vector<Box> blockers =
      InflateAll(config.obstacles, config.object_half_extent);
  ObjectState next = state;
  for (int axis = 0; axis < 3; ++axis) {
    if (axis == 2 && config.mode == Mode::kPush) continue;
    const double d = std::clamp(action.displacement[axis], -1.0, 1.0) *
                     config.max_step_displacement;
    if (d == 0.0) continue;
    next.position[axis] = SweepAxis(next.position, axis, d, blockers,
                                    bounds.min[axis], bounds.max[axis]);
  }
  next.velocity = next.position - state.position;
  return next;
}

double SparseReward(const Vec3& achieved, const Vec3& goal, double epsilon) {
  return (achieved - goal).norm() <= epsilon ? 0.0 : -1.0;
}

std::array<double, kManipObservationSize> Observe(const ManipState& s) {
  std::array<double, kManipObservationSize> obs{};
  int k = 0;
  auto put = [&](const Vec3& v) {
    for (int i = 0; i < 3; ++i) obs[k++] = v[i];
  };
  put(s.gripper_pos);
  put(s.gripper_vel);
  obs[k++] = s.gripper_opening;
  put(s.object_pos);
  put(s.object_vel);
  put(s.relative_pos());
  put(s.relative_vel());
  obs[k++] = s.grasped ? 1.0 : 0.0;
  return obs;
}

std::array<double, kObjectObservationSize> Observe(const ObjectState& s) {
  return {s.position[0], s.position[1], s.position[2],
          s.velocity[0], s.velocity[1], s.velocity[2]};
}

double ContainmentViolation(const ManipState& state, const WorldConfig& config) {
  auto outside = [](const Vec3& p, const Box& b) {
    double v = 0.0;
    for (int i = 0; i < 3; ++i) {
      v = std::max(v, b.min[i] - p[i]);
      v = std::max(v, p[i] - b.max[i]);
    }
    return v;
  };
  double v = std::max(outside(state.object_pos, config.ObjectBounds()),
                      outside(state.gripper_pos, config.GripperBounds()));
  if (config.mode == Mode::kPush) {
    v = std::max(v, std::abs(state.object_pos[2] - config.rest_height()));
    if (state.grasped) v = std::max(v, 1.0);
  }
  return v;
}

double PenetrationDepth(const ObjectState& state, const WorldConfig& config) {
  double depth = 0.0;
  for (const Box& b : config.obstacles) {
    depth = std::max(
        depth, -b.Inflated(config.object_half_extent).SignedDistance(state.position));
  }
  return depth;
}

double PenetrationDepth(const ManipState& state, const WorldConfig& config) {
  double depth = PenetrationDepth(Reduce(state), config);
  for (const Box& b : config.obstacles) {
    depth = std::max(
        depth, -b.Inflated(config.gripper_radius).SignedDistance(state.gripper_pos));
  }
  if (!state.grasped) {
    const Box contact = Around(state.object_pos,
                               config.object_half_extent + config.gripper_radius);
    depth = std::max(depth, -contact.SignedDistance(state.gripper_pos));
  }
  return depth;
}

}  // namespace objgoal::world
