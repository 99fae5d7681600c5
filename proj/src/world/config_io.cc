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

#include "objgoal/world/config_io.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "objgoal/error.h"

namespace objgoal::world {

using nlohmann::json;

namespace {

json BoxToJson(const Box& b) { return {{"min", ToJson(b.min)}, {"max", ToJson(b.max)}}; }

Box BoxFromJson(const json& j, const std::string& context) {
  if (!j.is_object()) throw ConfigError(context + " must be an object");
  RejectUnknownKeys(j, {"min", "max"}, context);
  return {Vec3FromJson(j, "min"), Vec3FromJson(j, "max")};
}

template <typename T>
T Required(const json& j, const std::string& key) {
  if (!j.contains(key)) throw ConfigError("missing key '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError("bad value for '" + key + "': " + e.what());
  }
}

}  // namespace

json ToJson(const Vec3& v) { return json::array({v[0], v[1], v[2]}); }

Vec3 Vec3FromJson(const json& j, const std::string& key) {
  if (!j.contains(key)) throw ConfigError("missing key '" + key + "'");
  const json& a = j.at(key);
  if (!a.is_array() || a.size() != 3) {
    throw ConfigError("'" + key + "' must be a 3-element array");
  }
  Vec3 v;
  for (int i = 0; i < 3; ++i) {
    if (!a[i].is_number()) throw ConfigError("'" + key + "' must hold numbers");
    v[i] = a[i].get<double>();
  }
  return v;
}

void RejectUnknownKeys(const json& j, const std::vector<std::string>& allowed,
                       const std::string& context) {
  for (const auto& [key, value] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ConfigError("unknown key '" + key + "' in " + context);
    }
  }
}

json ToJson(const WorldConfig& c) {
  json obstacles = json::array();
  for (const Box& b : c.obstacles) obstacles.push_back(BoxToJson(b));
  return {
      {"name", c.name},
      {"mode", c.mode == Mode::kPush ? "push" : "pick_and_place"},
      {"table", BoxToJson(c.table)},
      {"obstacles", obstacles},
      {"object_half_extent", c.object_half_extent},
      {"gripper_radius", c.gripper_radius},
      {"grasp_radius", c.grasp_radius},
      {"spawn_region", BoxToJson(c.spawn_region)},
      {"goal_region", BoxToJson(c.goal_region)},
      {"table_goal_probability", c.table_goal_probability},
      {"push_friction", c.push_friction},
      {"epsilon", c.epsilon},
      {"horizon", c.horizon},
      {"max_step_displacement", c.max_step_displacement},
      {"gripper_home", ToJson(c.gripper_home)},
  };
}

WorldConfig WorldFromJson(const json& j) {
  if (!j.is_object()) throw ConfigError("world config must be a JSON object");
  RejectUnknownKeys(j,
                    {"name", "mode", "table", "obstacles", "object_half_extent",
                     "gripper_radius", "grasp_radius", "spawn_region",
                     "goal_region", "table_goal_probability", "push_friction", "epsilon",
                     "horizon", "max_step_displacement", "gripper_home"},
                    "world config");
  WorldConfig c;
  c.name = Required<std::string>(j, "name");
  const std::string mode = Required<std::string>(j, "mode");
  if (mode == "push") {
    c.mode = Mode::kPush;
  } else if (mode == "pick_and_place") {
    c.mode = Mode::kPickAndPlace;
  } else {
    throw ConfigError("unknown mode '" + mode + "'");
  }
  if (!j.contains("table")) throw ConfigError("missing key 'table'");
  c.table = BoxFromJson(j.at("table"), "table");
  if (j.contains("obstacles")) {
    if (!j.at("obstacles").is_array()) throw ConfigError("'obstacles' must be an array");
    for (const json& b : j.at("obstacles")) c.obstacles.push_back(BoxFromJson(b, "obstacle"));
  }
  c.object_half_extent = Required<double>(j, "object_half_extent");
  c.gripper_radius = Required<double>(j, "gripper_radius");
  c.grasp_radius = Required<double>(j, "grasp_radius");
  if (!j.contains("spawn_region")) throw ConfigError("missing key 'spawn_region'");
  c.spawn_region = BoxFromJson(j.at("spawn_region"), "spawn_region");
  if (!j.contains("goal_region")) throw ConfigError("missing key 'goal_region'");
  c.goal_region = BoxFromJson(j.at("goal_region"), "goal_region");
  if (j.contains("push_friction")) {
    c.push_friction = Required<double>(j, "push_friction");
  }
  if (j.contains("table_goal_probability")) {
    c.table_goal_probability = Required<double>(j, "table_goal_probability");
  }
  c.epsilon = Required<double>(j, "epsilon");
  c.horizon = Required<int>(j, "horizon");
  c.max_step_displacement = Required<double>(j, "max_step_displacement");
  c.gripper_home = Vec3FromJson(j, "gripper_home");
  c.Validate();
  return c;
}

void SaveWorld(const std::filesystem::path& path, const WorldConfig& config) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << ToJson(config).dump(2) << "\n";
}

WorldConfig LoadWorld(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open world config " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return WorldFromJson(j);
}

void TrajectoryRecorder::Record(int step, const ManipState& state,
                                const RobotAction& action, double reward) {
  rows_.push_back({step, state, action, reward});
}

std::string TrajectoryRecorder::ToCsv() const {
  std::ostringstream out;
  out.precision(17);
  out << "step,gripper_x,gripper_y,gripper_z,object_x,object_y,object_z,"
         "action_0,action_1,action_2,action_3,reward,goal_x,goal_y,goal_z\n";
  for (const Row& row : rows_) {
    out << row.step;
    for (int i = 0; i < 3; ++i) out << ',' << row.state.gripper_pos[i];
    for (int i = 0; i < 3; ++i) out << ',' << row.state.object_pos[i];
    for (int i = 0; i < 3; ++i) out << ',' << row.action.displacement[i];
    out << ',' << row.action.gripper << ',' << row.reward;
    for (int i = 0; i < 3; ++i) out << ',' << goal_.position[i];
    out << '\n';
  }
  return out.str();
}

void TrajectoryRecorder::WriteCsv(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << ToCsv();
}

}  // namespace objgoal::world
