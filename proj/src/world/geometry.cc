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

#include "objgoal/world/geometry.h"

#include <algorithm>
#include <cmath>

namespace objgoal::world {

double Box::SignedDistance(const Vec3& p) const {
  const Vec3 center = 0.5 * (min + max);
  const Vec3 half = 0.5 * (max - min);
  const Vec3 q = (p - center).cwiseAbs() - half;
  const double outside = q.cwiseMax(0.0).norm();
  const double inside = std::min(q.maxCoeff(), 0.0);
  return outside + inside;
}

double SweepAxis(const Vec3& pos, int axis, double delta,
                 std::span<const Box> blockers, double lo, double hi) {
  const double start = pos[axis];
  double target = std::clamp(start + delta, lo, hi);
  const int a1 = (axis + 1) % 3;
  const int a2 = (axis + 2) % 3;
  for (const Box& box : blockers) {
    if (!(pos[a1] > box.min[a1] && pos[a1] < box.max[a1] &&
          pos[a2] > box.min[a2] && pos[a2] < box.max[a2])) {
      continue;
    }
    if (target > start && start <= box.min[axis] + kContactTolerance &&
        target > box.min[axis]) {
      target = std::max(box.min[axis], start);
    } else if (target < start && start >= box.max[axis] - kContactTolerance &&
               target < box.max[axis]) {
      target = std::min(box.max[axis], start);
    }
  }
  return target;
}

}  // namespace objgoal::world
