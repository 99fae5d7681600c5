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

#ifndef OBJGOAL_WORLD_SUITE_H_
#define OBJGOAL_WORLD_SUITE_H_

#include <string>
#include <string_view>
#include <vector>

#include "objgoal/world/world.h"

namespace objgoal::world {

// The seven benchmark worlds, in a fixed order:
//   Push-Obstacle, Push-DoubleObstacles, PnP-Simple-v1, PnP-Simple-v2,
//   PnP-Obstacle, PnP-Shelf, PnP-Insertion
std::vector<WorldConfig> EnvSuite();

// The suite plus the obstacle-free Push-Simple world.
std::vector<WorldConfig> AllWorlds();

// Throws ConfigError for an unknown name.
WorldConfig FindWorld(std::string_view name);

std::vector<std::string> WorldNames();

}  // namespace objgoal::world

#endif  // OBJGOAL_WORLD_SUITE_H_
