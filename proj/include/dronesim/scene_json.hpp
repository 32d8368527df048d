// Copyright 2026 The dronesim Authors
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

#pragma once

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>

#include "json.hpp"

#include "dronesim/errors.hpp"
#include "dronesim/scene.hpp"

namespace dronesim {

// Scene documents: lengths in meters, angles in radians.
//
//   {"room": {"w":3.3,"d":3.3,"h":2.5},
//    "platform": {"cx":2.0,"cy":1.65,"yaw":0.0},
//    "cuboids": [{"cx":..,"cy":..,"cz":..,"yaw":..,"ex":..,"ey":..,"ez":..,"albedo":0.5}],
//    "drone_start": {"x":1.0,"y":1.65,"yaw":0.0}}
//
// ex/ey/ez are half extents. Unknown keys are errors.

namespace detail {

inline void require_keys(const nlohmann::json& j, std::string_view where,
                         std::initializer_list<std::string_view> allowed) {
  if (!j.is_object()) throw InvalidArgument(std::string(where) + " must be an object");
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (auto a : allowed) known = known || key == a;
    if (!known) throw InvalidArgument("unknown field '" + key + "' in " + std::string(where));
  }
  for (auto a : allowed) {
    if (!j.contains(std::string(a))) {
      throw InvalidArgument("missing field '" + std::string(a) + "' in " + std::string(where));
    }
  }
}

inline double number(const nlohmann::json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_number()) throw InvalidArgument(std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

}  // namespace detail

inline nlohmann::json scene_to_json(const Scene& s) {
  nlohmann::json cuboids = nlohmann::json::array();
  for (const Cuboid& c : s.cuboids) {
    cuboids.push_back({{"cx", c.center.x},
                       {"cy", c.center.y},
                       {"cz", c.center.z},
                       {"yaw", c.yaw},
                       {"ex", c.half_extents.x},
                       {"ey", c.half_extents.y},
                       {"ez", c.half_extents.z},
                       {"albedo", c.albedo}});
  }
  return {{"room", {{"w", s.room.w}, {"d", s.room.d}, {"h", s.room.h}}},
          {"platform", {{"cx", s.platform.cx}, {"cy", s.platform.cy}, {"yaw", s.platform.yaw}}},
          {"cuboids", cuboids},
          {"drone_start",
           {{"x", s.drone_start.position.x},
            {"y", s.drone_start.position.y},
            {"yaw", s.drone_start.yaw}}}};
}

/// Parses and validates a scene document.
inline Scene scene_from_json(const nlohmann::json& j) {
  using detail::number;
  detail::require_keys(j, "scene", {"room", "platform", "cuboids", "drone_start"});
  Scene s;
  const auto& room = j.at("room");
  detail::require_keys(room, "room", {"w", "d", "h"});
  s.room = {number(room, "w"), number(room, "d"), number(room, "h")};

  const auto& pad = j.at("platform");
  detail::require_keys(pad, "platform", {"cx", "cy", "yaw"});
  s.platform = {number(pad, "cx"), number(pad, "cy"), normalize_angle(number(pad, "yaw"))};

  const auto& boxes = j.at("cuboids");
  if (!boxes.is_array()) throw InvalidArgument("cuboids must be an array");
  for (const auto& b : boxes) {
    detail::require_keys(b, "cuboid", {"cx", "cy", "cz", "yaw", "ex", "ey", "ez", "albedo"});
    Cuboid c;
    c.center = {number(b, "cx"), number(b, "cy"), number(b, "cz")};
    c.yaw = normalize_angle(number(b, "yaw"));
    c.half_extents = {number(b, "ex"), number(b, "ey"), number(b, "ez")};
    c.albedo = number(b, "albedo");
    s.cuboids.push_back(c);
  }

  const auto& start = j.at("drone_start");
  detail::require_keys(start, "drone_start", {"x", "y", "yaw"});
  s.drone_start = {{number(start, "x"), number(start, "y"), kDroneHalfExtents.z},
                   normalize_angle(number(start, "yaw"))};
  validate_scene(s);
  return s;
}

inline Scene load_scene(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open scene file " + path);
  nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded()) throw InvalidArgument("scene file is not valid JSON: " + path);
  return scene_from_json(j);
}

inline void save_scene(const Scene& scene, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write scene file " + path);
  out << scene_to_json(scene).dump(2) << '\n';
}

}  // namespace dronesim
