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

#include "objgoal/world/suite.h"

#include "objgoal/error.h"

namespace objgoal::world {
namespace {

constexpr double kRest = 0.025;  // object half extent, resting height

Box Region(double x0, double x1, double y0, double y1, double z0, double z1) {
  return {{x0, y0, z0}, {x1, y1, z1}};
}

// Wall parallel to x at y = y_center, solid over [x0, x1].
Box Wall(double x0, double x1, double y_center, double height,
         double thickness = 0.04) {
  return Region(x0, x1, y_center - thickness / 2, y_center + thickness / 2, 0.0,
                height);
}

WorldConfig Base(const char* name, Mode mode) {
  WorldConfig c;
  c.name = name;
  c.mode = mode;
  return c;
}

WorldConfig PushSimple() {
  WorldConfig c = Base("Push-Simple", Mode::kPush);
  c.spawn_region = Region(-0.15, 0.15, -0.3, 0.0, kRest, kRest);
  c.goal_region = c.spawn_region;
  return c;
}

// One wall across the table with a gap to the right of the direct path.
WorldConfig PushObstacle() {
  WorldConfig c = Base("Push-Obstacle", Mode::kPush);
  c.obstacles = {Wall(-0.5, 0.1, 0.0, 0.1), Wall(0.25, 0.5, 0.0, 0.1)};
  c.spawn_region = Region(-0.2, 0.1, -0.3, -0.1, kRest, kRest);
  c.goal_region = Region(-0.2, 0.1, 0.1, 0.3, kRest, kRest);
  return c;
}

// Two staggered walls, gaps on opposite sides.
WorldConfig PushDoubleObstacles() {
  WorldConfig c = Base("Push-DoubleObstacles", Mode::kPush);
  c.obstacles = {Wall(-0.5, 0.15, -0.08, 0.1), Wall(0.3, 0.5, -0.08, 0.1),
                 Wall(-0.5, -0.3, 0.08, 0.1), Wall(-0.15, 0.5, 0.08, 0.1)};
  c.spawn_region = Region(-0.2, 0.2, -0.3, -0.15, kRest, kRest);
  c.goal_region = Region(-0.2, 0.2, 0.15, 0.3, kRest, kRest);
  c.horizon = 80;
  return c;
}

// Object and goal near the gripper; half of the goals on the table.
WorldConfig PnpSimpleV1() {
  WorldConfig c = Base("PnP-Simple-v1", Mode::kPickAndPlace);
  c.spawn_region = Region(-0.15, 0.15, -0.3, 0.0, kRest, kRest);
  c.goal_region = Region(-0.15, 0.15, -0.3, 0.0, kRest, kRest + 0.25);
  c.table_goal_probability = 0.5;
  return c;
}

// Same world, object and goal anywhere, goals never forced to the table.
WorldConfig PnpSimpleV2() {
  WorldConfig c = PnpSimpleV1();
  c.name = "PnP-Simple-v2";
  c.spawn_region = Region(-0.45, 0.45, -0.3, 0.3, kRest, kRest);
  c.goal_region = Region(-0.45, 0.45, -0.3, 0.3, kRest, kRest + 0.25);
  c.table_goal_probability = 0.0;
  return c;
}

// Full-width wall; the object has to be lifted over it.
WorldConfig PnpObstacle() {
  WorldConfig c = Base("PnP-Obstacle", Mode::kPickAndPlace);
  c.obstacles = {Wall(-0.5, 0.5, 0.0, 0.12)};
  c.spawn_region = Region(-0.15, 0.15, -0.3, -0.1, kRest, kRest);
  c.goal_region = Region(-0.15, 0.15, 0.1, 0.3, kRest, kRest);
  return c;
}

// Goal on a raised shelf board under a roof.
WorldConfig PnpShelf() {
  WorldConfig c = Base("PnP-Shelf", Mode::kPickAndPlace);
  c.obstacles = {Region(-0.2, 0.2, 0.15, 0.35, 0.0, 0.12),
                 Region(-0.2, 0.2, 0.15, 0.35, 0.24, 0.27)};
  c.spawn_region = Region(-0.15, 0.15, -0.3, -0.05, kRest, kRest);
  c.goal_region = Region(-0.15, 0.15, 0.2, 0.3, 0.12 + kRest, 0.12 + kRest);
  return c;
}

// Goal inside a square slot; the spawn region covers the slot too.
WorldConfig PnpInsertion() {
  WorldConfig c = Base("PnP-Insertion", Mode::kPickAndPlace);
  const double h = 0.06;
  c.obstacles = {Region(-0.09, 0.09, 0.06, 0.10, 0.0, h),
                 Region(-0.09, 0.09, 0.20, 0.24, 0.0, h),
                 Region(-0.09, -0.05, 0.10, 0.20, 0.0, h),
                 Region(0.05, 0.09, 0.10, 0.20, 0.0, h)};
  c.spawn_region = Region(-0.2, 0.2, -0.3, 0.2, kRest, kRest);
  c.goal_region = Region(-0.02, 0.02, 0.13, 0.17, kRest, kRest);
  return c;
}

}  // namespace

std::vector<WorldConfig> EnvSuite() {
  return {PushObstacle(), PushDoubleObstacles(), PnpSimpleV1(), PnpSimpleV2(),
          PnpObstacle(),  PnpShelf(),            PnpInsertion()};
}

std::vector<WorldConfig> AllWorlds() {
  std::vector<WorldConfig> all = EnvSuite();
  all.insert(all.begin(), PushSimple());
  return all;
}

WorldConfig FindWorld(std::string_view name) {
  for (WorldConfig& c : AllWorlds()) {
    if (c.name == name) return c;
  }
  throw ConfigError("unknown world '" + std::string(name) + "'");
}

std::vector<std::string> WorldNames() {
  std::vector<std::string> names;
  for (const WorldConfig& c : AllWorlds()) names.push_back(c.name);
  return names;
}

}  // namespace objgoal::world
