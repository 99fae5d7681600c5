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

#ifndef OBJGOAL_WORLD_CONFIG_IO_H_
#define OBJGOAL_WORLD_CONFIG_IO_H_

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "objgoal/world/world.h"

namespace objgoal::world {

// JSON schema (all keys required except where noted, unknown keys rejected):
//
//   name                    string
//   mode                    "push" | "pick_and_place"
//   table                   {"min": [x,y,z], "max": [x,y,z]}
//   obstacles               [box, ...]                 (optional, default [])
//   object_half_extent      number, m
//   gripper_radius          number, m
//   grasp_radius            number, m
//   push_friction           number >= 0               (optional, default 1)
//   spawn_region            box
//   goal_region             box
//   table_goal_probability  number in [0, 1]          (optional, default 0)
//   epsilon                 number, m
//   horizon                 integer, steps
//   max_step_displacement   number, m/step
//   gripper_home            [x, y, z]
nlohmann::json ToJson(const WorldConfig& config);
WorldConfig WorldFromJson(const nlohmann::json& j);

void SaveWorld(const std::filesystem::path& path, const WorldConfig& config);
WorldConfig LoadWorld(const std::filesystem::path& path);

// Shared helpers for other JSON readers.
nlohmann::json ToJson(const Vec3& v);
Vec3 Vec3FromJson(const nlohmann::json& j, const std::string& key);
void RejectUnknownKeys(const nlohmann::json& j,
                       const std::vector<std::string>& allowed,
                       const std::string& context);

// Records one manipulation episode and writes it as CSV with header
// step,gripper_x,gripper_y,gripper_z,object_x,object_y,object_z,
// action_0,action_1,action_2,action_3,reward,goal_x,goal_y,goal_z
class TrajectoryRecorder {
 public:
  explicit TrajectoryRecorder(const Goal& goal) : goal_(goal) {}

  // `state` is the state after the action was applied.
  void Record(int step, const ManipState& state, const RobotAction& action,
              double reward);
  void WriteCsv(const std::filesystem::path& path) const;
  std::string ToCsv() const;

 private:
  struct Row {
    int step;
    ManipState state;
    RobotAction action;
    double reward;
  };
  Goal goal_;
  std::vector<Row> rows_;
};

}  // namespace objgoal::world

#endif  // OBJGOAL_WORLD_CONFIG_IO_H_
