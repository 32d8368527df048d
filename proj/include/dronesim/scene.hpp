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

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dronesim/errors.hpp"
#include "dronesim/geometry.hpp"

namespace dronesim {

/// Collision box of a Tello-sized drone, half extents in meters.
inline constexpr Vec3 kDroneHalfExtents{0.09, 0.09, 0.025};

struct RoomDims {
  double w = 3.3;
  double d = 3.3;
  double h = 2.5;

  friend bool operator==(const RoomDims&, const RoomDims&) = default;
};

/// Oriented box obstacle. Yaw rotates about the box's vertical axis.
struct Cuboid {
  Vec3 center;
  double yaw = 0.0;
  Vec3 half_extents;
  double albedo = 0.5;

  double volume() const { return 8.0 * half_extents.x * half_extents.y * half_extents.z; }
  Footprint footprint() const { return {center.x, center.y, yaw, half_extents.x, half_extents.y}; }

  friend bool operator==(const Cuboid&, const Cuboid&) = default;
};

/// 60 cm square marker pad lying on the floor.
struct LandingPlatform {
  static constexpr double kSide = 0.60;
  static constexpr double kThickness = 0.01;

  double cx = 0.0;
  double cy = 0.0;
  double yaw = 0.0;

  Vec3 center() const { return {cx, cy, kThickness / 2.0}; }
  double top() const { return kThickness; }
  Vec3 half_extents() const { return {kSide / 2.0, kSide / 2.0, kThickness / 2.0}; }
  Footprint footprint() const { return {cx, cy, yaw, kSide / 2.0, kSide / 2.0}; }

  friend bool operator==(const LandingPlatform&, const LandingPlatform&) = default;
};

/// Room, platform, obstacles and the drone's spawn. The spawn pose is the
/// drone body center, so a spawn on the floor has z = kDroneHalfExtents.z.
struct Scene {
  RoomDims room;
  LandingPlatform platform;
  std::vector<Cuboid> cuboids;
  Pose drone_start{{0.5, 0.5, kDroneHalfExtents.z}, 0.0};

  double total_cuboid_volume() const {
    double v = 0.0;
    for (const auto& c : cuboids) v += c.volume();
    return v;
  }

  friend bool operator==(const Scene&, const Scene&) = default;
};

inline Footprint drone_footprint(const Pose& pose, const Vec3& half = kDroneHalfExtents) {
  return {pose.position.x, pose.position.y, pose.yaw, half.x, half.y};
}

enum class SurfaceKind { floor, ceiling, wall_x0, wall_x1, wall_y0, wall_y1, platform, cuboid };

struct SurfaceId {
  SurfaceKind kind = SurfaceKind::floor;
  std::size_t index = 0;  // cuboid index when kind == cuboid

  friend bool operator==(const SurfaceId&, const SurfaceId&) = default;
};

struct SceneHit {
  double distance = 0.0;
  SurfaceId surface;
  Vec3 normal;  // world frame, unit, facing the incoming ray
};

/// Ray against one oriented cuboid.
inline std::optional<SceneHit> ray_intersect(const Vec3& origin, const Vec3& dir, const Cuboid& box,
                                             double t_min = 0.0) {
  const Vec3 local_o = rotate_world_to_body(origin - box.center, box.yaw);
  const Vec3 local_d = rotate_world_to_body(dir, box.yaw);
  auto hit = intersect_local_box(local_o, local_d, box.half_extents, t_min);
  if (!hit) return std::nullopt;
  return SceneHit{hit->distance, {SurfaceKind::cuboid, 0}, rotate_body_to_world(hit->normal, box.yaw)};
}

/// Nearest surface along the ray with distance >= t_min. Room planes only
/// count when the ray travels against their inward normal, so a drone
/// resting on the floor can take off.
inline std::optional<SceneHit> ray_intersect(const Vec3& origin, const Vec3& dir, const Scene& scene,
                                             double t_min = 0.0) {
  std::optional<SceneHit> best;
  auto consider = [&](double t, SurfaceId id, const Vec3& n) {
    if (t < t_min) return;
    if (!best || t < best->distance) best = SceneHit{t, id, n};
  };

  const RoomDims& r = scene.room;
  if (dir.z < 0.0) consider(-origin.z / dir.z, {SurfaceKind::floor}, {0, 0, 1});
  if (dir.z > 0.0) consider((r.h - origin.z) / dir.z, {SurfaceKind::ceiling}, {0, 0, -1});
  if (dir.x < 0.0) consider(-origin.x / dir.x, {SurfaceKind::wall_x0}, {1, 0, 0});
  if (dir.x > 0.0) consider((r.w - origin.x) / dir.x, {SurfaceKind::wall_x1}, {-1, 0, 0});
  if (dir.y < 0.0) consider(-origin.y / dir.y, {SurfaceKind::wall_y0}, {0, 1, 0});
  if (dir.y > 0.0) consider((r.d - origin.y) / dir.y, {SurfaceKind::wall_y1}, {0, -1, 0});

  const Cuboid pad{scene.platform.center(), scene.platform.yaw, scene.platform.half_extents(), 0.0};
  if (auto hit = ray_intersect(origin, dir, pad, t_min)) {
    consider(hit->distance, {SurfaceKind::platform}, hit->normal);
  }
  for (std::size_t i = 0; i < scene.cuboids.size(); ++i) {
    if (auto hit = ray_intersect(origin, dir, scene.cuboids[i], t_min)) {
      consider(hit->distance, {SurfaceKind::cuboid, i}, hit->normal);
    }
  }
  return best;
}

namespace detail {

inline bool footprint_inside_room(const Footprint& f, const RoomDims& room) {
  for (const Vec3& c : footprint_corners(f)) {
    if (c.x < 0.0 || c.x > room.w || c.y < 0.0 || c.y > room.d) return false;
  }
  return true;
}

}  // namespace detail

/// Lists every violated scene invariant; empty means valid.
inline std::vector<std::string> scene_issues(const Scene& scene) {
  std::vector<std::string> issues;
  const RoomDims& room = scene.room;
  if (!(room.w > 0.0 && room.d > 0.0 && room.h > 0.0)) {
    issues.push_back("room dimensions must be positive");
    return issues;
  }
  if (!detail::footprint_inside_room(scene.platform.footprint(), room)) {
    issues.push_back("platform footprint leaves the room");
  }
  const Footprint start = drone_footprint(scene.drone_start);
  if (!is_finite(scene.drone_start.position) || !detail::footprint_inside_room(start, room)) {
    issues.push_back("drone start footprint leaves the room");
  }
  if (std::abs(scene.drone_start.position.z - kDroneHalfExtents.z) > 1e-9) {
    issues.push_back("drone start is not on the floor");
  }
  if (footprints_overlap(start, scene.platform.footprint())) {
    issues.push_back("drone start overlaps the platform");
  }
  for (std::size_t i = 0; i < scene.cuboids.size(); ++i) {
    const Cuboid& c = scene.cuboids[i];
    const std::string tag = "cuboid " + std::to_string(i) + ": ";
    if (!(c.half_extents.x > 0.0 && c.half_extents.y > 0.0 && c.half_extents.z > 0.0)) {
      issues.push_back(tag + "half extents must be positive");
      continue;
    }
    if (!is_finite(c.center) || !detail::footprint_inside_room(c.footprint(), room) ||
        c.center.z - c.half_extents.z < -1e-12 || c.center.z + c.half_extents.z > room.h + 1e-12) {
      issues.push_back(tag + "leaves the room");
    }
    if (!(c.albedo >= 0.0 && c.albedo <= 1.0)) issues.push_back(tag + "albedo outside [0,1]");
    if (footprints_overlap(c.footprint(), scene.platform.footprint())) {
      issues.push_back(tag + "overlaps the platform");
    }
    if (footprints_overlap(c.footprint(), start)) issues.push_back(tag + "overlaps the drone start");
  }
  return issues;
}

inline void validate_scene(const Scene& scene) {
  const auto issues = scene_issues(scene);
  if (!issues.empty()) throw InvalidArgument("invalid scene: " + issues.front());
}

}  // namespace dronesim
