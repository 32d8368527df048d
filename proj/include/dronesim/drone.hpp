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

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

#include "dronesim/geometry.hpp"
#include "dronesim/scene.hpp"

namespace dronesim {

/// The five SDK control commands. Numeric codes are the dataset label axis.
enum class FlightCommand : std::uint8_t { takeoff = 0, land = 1, forward = 2, cw = 3, ccw = 4 };

inline constexpr std::size_t kCommandCount = 5;
inline constexpr std::array<FlightCommand, kCommandCount> kAllCommands{
    FlightCommand::takeoff, FlightCommand::land, FlightCommand::forward, FlightCommand::cw,
    FlightCommand::ccw};

constexpr std::string_view to_string(FlightCommand cmd) {
  constexpr std::array<std::string_view, kCommandCount> names{"takeoff", "land", "forward", "cw",
                                                              "ccw"};
  return names[static_cast<std::size_t>(cmd)];
}

constexpr std::optional<FlightCommand> command_from_string(std::string_view token) {
  for (FlightCommand c : kAllCommands) {
    if (to_string(c) == token) return c;
  }
  return std::nullopt;
}

constexpr std::optional<FlightCommand> command_from_code(int code) {
  if (code < 0 || code >= static_cast<int>(kCommandCount)) return std::nullopt;
  return static_cast<FlightCommand>(code);
}

constexpr int code_of(FlightCommand cmd) { return static_cast<int>(cmd); }

struct DroneConfig {
  double takeoff_altitude = 0.50;  // meters above the support surface
  double forward_step = 0.20;      // meters
  double rotation_step = deg_to_rad(10.0);
  Vec3 half_extents = kDroneHalfExtents;
};

struct DroneState {
  Pose pose;
  bool airborne = false;
  Pose takeoff_pose;  // reference for the height / tof sensors
  std::uint32_t commands_executed = 0;

  /// A drone resting on a support surface; sensors read zero.
  static DroneState resting(const Pose& pose) { return {pose, false, pose, 0}; }
};

enum class CommandStatus { moved, crashed, invalid };

struct CommandResult {
  CommandStatus status = CommandStatus::invalid;
  Pose new_pose;
};

struct SensorReadings {
  double height_m = 0.0;
  double tof_m = 0.0;
  std::uint32_t cmd_count = 0;
};

namespace detail {

/// Body center plus the four cross-section corners perpendicular to `dir`.
inline std::array<Vec3, 5> sweep_origins(const Pose& pose, const Vec3& dir, const Vec3& half) {
  Vec3 a, b;
  double ea, eb;
  if (std::abs(dir.z) > 0.999) {
    a = rotate_body_to_world({1, 0, 0}, pose.yaw);
    b = rotate_body_to_world({0, 1, 0}, pose.yaw);
    ea = half.x;
    eb = half.y;
  } else {
    a = normalized(cross({0, 0, 1}, dir));
    b = cross(dir, a);
    ea = half.y;
    eb = half.z;
  }
  const Vec3& c = pose.position;
  return {c, c + a * ea + b * eb, c + a * ea - b * eb, c - a * ea + b * eb, c - a * ea - b * eb};
}

}  // namespace detail

/// Casts the five sweep rays from the current position toward `target`.
/// True when nothing is hit closer than the travel distance.
inline bool path_clear(const DroneState& state, const Scene& scene, const Vec3& target,
                       const Vec3& half = kDroneHalfExtents) {
  const Vec3 motion = target - state.pose.position;
  const double len = norm(motion);
  if (len == 0.0) return true;
  const Vec3 dir = motion * (1.0 / len);
  for (const Vec3& origin : detail::sweep_origins(state.pose, dir, half)) {
    auto hit = ray_intersect(origin, dir, scene);
    if (hit && hit->distance < len) return false;
  }
  return true;
}

/// Height of the first support surface under the drone's footprint.
inline double support_height_below(const DroneState& state, const Scene& scene,
                                   const Vec3& half = kDroneHalfExtents) {
  const Vec3 down{0, 0, -1};
  double nearest = state.pose.position.z;  // the floor, at worst
  for (const Vec3& origin : detail::sweep_origins(state.pose, down, half)) {
    if (auto hit = ray_intersect(origin, down, scene)) nearest = std::min(nearest, hit->distance);
  }
  return state.pose.position.z - nearest;
}

/// Target of a translating command, or nullopt for rotations.
inline std::optional<Vec3> command_target(const DroneState& state, const Scene& scene,
                                          FlightCommand cmd, const DroneConfig& cfg) {
  switch (cmd) {
    case FlightCommand::takeoff:
      return state.pose.position + Vec3{0, 0, cfg.takeoff_altitude};
    case FlightCommand::land: {
      Vec3 p = state.pose.position;
      p.z = support_height_below(state, scene, cfg.half_extents) + cfg.half_extents.z;
      return p;
    }
    case FlightCommand::forward:
      return state.pose.position + rotate_body_to_world({cfg.forward_step, 0, 0}, state.pose.yaw);
    case FlightCommand::cw:
    case FlightCommand::ccw:
      return std::nullopt;
  }
  return std::nullopt;
}

/// Takeoff only from a surface; everything else only in the air.
constexpr bool command_allowed(bool airborne, FlightCommand cmd) {
  return cmd == FlightCommand::takeoff ? !airborne : airborne;
}

/// Applies the state change of an already-validated, collision-free command.
inline void commit_command(DroneState& state, FlightCommand cmd, const Pose& final_pose) {
  if (cmd == FlightCommand::takeoff) {
    state.takeoff_pose = state.pose;
    state.airborne = true;
  } else if (cmd == FlightCommand::land) {
    state.airborne = false;
  }
  state.pose = final_pose;
  ++state.commands_executed;
}

inline Pose rotated_pose(const Pose& pose, FlightCommand cmd, const DroneConfig& cfg) {
  const double step = cmd == FlightCommand::cw ? -cfg.rotation_step : cfg.rotation_step;
  return {pose.position, normalize_angle(pose.yaw + step)};
}

/// Teleporting executor: validity check, sweep check, then jump to the target.
/// Rotations skip collision checks since the position does not change.
inline CommandResult execute_simple(DroneState& state, const Scene& scene, FlightCommand cmd,
                                    const DroneConfig& cfg = {}) {
  if (!command_allowed(state.airborne, cmd)) return {CommandStatus::invalid, state.pose};

  Pose next = state.pose;
  if (cmd == FlightCommand::cw || cmd == FlightCommand::ccw) {
    next = rotated_pose(state.pose, cmd, cfg);
  } else {
    const Vec3 target = *command_target(state, scene, cmd, cfg);
    // Landing descends to the first surface found by the same rays.
    if (cmd != FlightCommand::land && !path_clear(state, scene, target, cfg.half_extents)) {
      return {CommandStatus::crashed, state.pose};
    }
    next.position = target;
  }
  commit_command(state, cmd, next);
  return {CommandStatus::moved, state.pose};
}

inline SensorReadings read_sensors(const DroneState& state) {
  const Vec3& p = state.pose.position;
  const Vec3& ref = state.takeoff_pose.position;
  return {std::abs(p.z - ref.z), distance(p, ref), state.commands_executed};
}

}  // namespace dronesim
