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

#ifndef OBJGOAL_WORLD_GEOMETRY_H_
#define OBJGOAL_WORLD_GEOMETRY_H_

#include <span>

#include <Eigen/Core>

namespace objgoal::world {

using Vec3 = Eigen::Vector3d;

// Positions within this distance of a face count as touching it.
inline constexpr double kContactTolerance = 1e-9;

// Axis-aligned box [min, max]. Interiors are open: touching a face is not an
// overlap.
struct Box {
  Vec3 min = Vec3::Zero();
  Vec3 max = Vec3::Zero();

  bool ContainsClosed(const Vec3& p) const {
    return (p.array() >= min.array()).all() && (p.array() <= max.array()).all();
  }
  bool ContainsOpen(const Vec3& p) const {
    return (p.array() > min.array()).all() && (p.array() < max.array()).all();
  }
  Box Inflated(double margin) const {
    return {min.array() - margin, max.array() + margin};
  }
  // Signed distance from p to the box surface, negative inside.
  double SignedDistance(const Vec3& p) const;

  bool operator==(const Box&) const = default;
};

// Moves `pos` along one axis by `delta`, stopping at the first face of any
// `blockers` box (configuration-space boxes) and at [lo, hi]. A blocker only
// stops motion when pos lies strictly inside its extent on the other two axes.
// Assumes pos starts outside every blocker interior.
double SweepAxis(const Vec3& pos, int axis, double delta,
                 std::span<const Box> blockers, double lo, double hi);

}  // namespace objgoal::world

#endif  // OBJGOAL_WORLD_GEOMETRY_H_
