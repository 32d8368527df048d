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

#include <cmath>
#include <functional>

#include "dronesim/drone.hpp"
#include "dronesim/errors.hpp"

namespace dronesim {

struct MotionProfileConfig {
  double v_max = 0.5;       // m/s
  double accel = 1.0;       // m/s^2
  double omega_max = kPi / 2.0;  // rad/s
  double alpha = kPi;       // rad/s^2
  double dt = 1.0 / 240.0;  // s

  void validate() const {
    if (!(v_max > 0 && accel > 0 && omega_max > 0 && alpha > 0 && dt > 0)) {
      throw InvalidArgument("motion profile parameters must be positive");
    }
  }
};

/// Constant-acceleration move from rest to rest. Short moves never reach the
/// speed limit and follow a triangle; longer ones cruise at the limit.
/// A move of exactly v_max^2/a counts as triangular.
struct MotionProfile {
  double distance = 0.0;
  double accel = 0.0;
  double peak_speed = 0.0;
  double accel_time = 0.0;
  double cruise_time = 0.0;

  bool triangular() const { return cruise_time == 0.0; }
  double total_time() const { return 2.0 * accel_time + cruise_time; }

  double speed_at(double t) const {
    if (t <= 0.0) return 0.0;
    const double total = total_time();
    if (t >= total) return 0.0;
    if (t < accel_time) return accel * t;
    if (t <= accel_time + cruise_time) return peak_speed;
    return accel * (total - t);
  }

  double position_at(double t) const {
    if (t <= 0.0) return 0.0;
    const double total = total_time();
    if (t >= total) return distance;
    const double ramp = 0.5 * accel * accel_time * accel_time;
    if (t < accel_time) return 0.5 * accel * t * t;
    if (t <= accel_time + cruise_time) return ramp + peak_speed * (t - accel_time);
    const double left = total - t;
    return distance - 0.5 * accel * left * left;
  }
};

inline MotionProfile make_profile(double distance, double v_max, double accel) {
  MotionProfile p;
  p.distance = distance;
  p.accel = accel;
  if (distance <= 0.0) return p;
  if (distance <= v_max * v_max / accel) {
    p.peak_speed = std::sqrt(accel * distance);
    p.accel_time = p.peak_speed / accel;
  } else {
    p.peak_speed = v_max;
    p.accel_time = v_max / accel;
    p.cruise_time = (distance - v_max * v_max / accel) / v_max;
  }
  return p;
}

/// Called once per simulation step with (time s, pose, speed). Speed is m/s
/// for translations and rad/s for rotations.
using MotionObserver = std::function<void(double, const Pose&, double)>;

namespace detail {

template <typename PoseAt>
void step_profile(const MotionProfile& profile, double dt, const MotionObserver& observer,
                  PoseAt&& pose_at) {
  if (!observer) return;
  const double total = profile.total_time();
  for (long k = 1;; ++k) {
    const double t = std::min(static_cast<double>(k) * dt, total);
    observer(t, pose_at(profile.position_at(t)), profile.speed_at(t));
    if (t >= total) break;
  }
}

}  // namespace detail

/// Straight-line flight to a world-frame target with a velocity profile.
/// The sweep is checked up front; an obstructed move aborts with the pose
/// unchanged.
inline CommandResult move_linear(DroneState& state, const Scene& scene, const Vec3& target,
                                 const MotionProfileConfig& cfg, const MotionObserver& observer,
                                 const Vec3& half = kDroneHalfExtents) {
  cfg.validate();
  if (!path_clear(state, scene, target, half)) return {CommandStatus::crashed, state.pose};
  const Vec3 start = state.pose.position;
  const Vec3 motion = target - start;
  const double len = norm(motion);
  const MotionProfile profile = make_profile(len, cfg.v_max, cfg.accel);
  const double yaw = state.pose.yaw;
  detail::step_profile(profile, cfg.dt, observer, [&](double s) {
    return Pose{len > 0.0 ? start + motion * (s / len) : start, yaw};
  });
  state.pose.position = target;
  return {CommandStatus::moved, state.pose};
}

/// Velocity-profile executor. Same validity and collision rules as
/// execute_simple and the same final pose.
inline CommandResult execute_velocity(DroneState& state, const Scene& scene, FlightCommand cmd,
                                      const MotionProfileConfig& cfg,
                                      const MotionObserver& observer = {},
                                      const DroneConfig& drone_cfg = {}) {
  cfg.validate();
  if (!command_allowed(state.airborne, cmd)) return {CommandStatus::invalid, state.pose};

  if (cmd == FlightCommand::cw || cmd == FlightCommand::ccw) {
    const Pose start = state.pose;
    const double sign = cmd == FlightCommand::cw ? -1.0 : 1.0;
    const MotionProfile profile = make_profile(drone_cfg.rotation_step, cfg.omega_max, cfg.alpha);
    detail::step_profile(profile, cfg.dt, observer, [&](double s) {
      return Pose{start.position, normalize_angle(start.yaw + sign * s)};
    });
    commit_command(state, cmd, rotated_pose(start, cmd, drone_cfg));
    return {CommandStatus::moved, state.pose};
  }

  const Vec3 target = *command_target(state, scene, cmd, drone_cfg);
  DroneState scratch = state;
  if (cmd == FlightCommand::land) {
    // Descent ends on the surface the rays found; nothing lies in between.
    const Vec3 start = state.pose.position;
    const double len = norm(target - start);
    const MotionProfile profile = make_profile(len, cfg.v_max, cfg.accel);
    detail::step_profile(profile, cfg.dt, observer, [&](double s) {
      return Pose{len > 0.0 ? start + (target - start) * (s / len) : start, state.pose.yaw};
    });
  } else {
    CommandResult r = move_linear(scratch, scene, target, cfg, observer, drone_cfg.half_extents);
    if (r.status != CommandStatus::moved) return {CommandStatus::crashed, state.pose};
  }
  Pose final_pose = state.pose;
  final_pose.position = target;
  commit_command(state, cmd, final_pose);
  return {CommandStatus::moved, state.pose};
}

}  // namespace dronesim
