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
#include <optional>
#include <string>
#include <string_view>

#include "dronesim/errors.hpp"
#include "dronesim/geometry.hpp"

namespace dronesim {

/// Converts a diagonal field of view to the vertical one for a w x h sensor:
/// vfov = 2 atan((h / diag) tan(dfov / 2)).
inline double dfov_to_vfov(double dfov, int width, int height) {
  if (!(dfov > 0.0 && dfov < kPi)) throw InvalidArgument("dfov must lie in (0, pi)");
  if (width <= 0 || height <= 0) throw InvalidArgument("image size must be positive");
  const double w = width, h = height;
  const double diag = std::sqrt(w * w + h * h);
  return 2.0 * std::atan(h / diag * std::tan(dfov * 0.5));
}

struct CameraIntrinsics {
  int width = 160;
  int height = 120;
  double dfov = deg_to_rad(82.6);
  double vfov = 0.0;
  double near = 0.05;
  double far = 5.0;

  static CameraIntrinsics make(int width, int height, double dfov) {
    if (width <= 0 || height <= 0 || width * 3 != height * 4) {
      throw InvalidArgument("image size must be 4:3, got " + std::to_string(width) + "x" +
                            std::to_string(height));
    }
    CameraIntrinsics c;
    c.width = width;
    c.height = height;
    c.dfov = dfov;
    c.vfov = dfov_to_vfov(dfov, width, height);
    return c;
  }

  double aspect() const { return static_cast<double>(width) / height; }
};

enum class CameraMode { front, diagonal, bottom, split, fisheye };

constexpr std::string_view to_string(CameraMode m) {
  switch (m) {
    case CameraMode::front: return "front";
    case CameraMode::diagonal: return "diagonal";
    case CameraMode::bottom: return "bottom";
    case CameraMode::split: return "split";
    case CameraMode::fisheye: return "fisheye";
  }
  return "?";
}

inline std::optional<CameraMode> camera_mode_from_string(std::string_view s) {
  for (auto m : {CameraMode::front, CameraMode::diagonal, CameraMode::bottom, CameraMode::split,
                 CameraMode::fisheye}) {
    if (to_string(m) == s) return m;
  }
  return std::nullopt;
}

/// Where the camera sits on the drone and how far it looks down.
struct CameraMount {
  Vec3 offset{0.04, 0.0, 0.0};  // body frame, meters
  double pitch_down = deg_to_rad(10.0);
  CameraMode mode = CameraMode::front;

  static CameraMount for_mode(CameraMode mode) {
    CameraMount m;
    m.mode = mode;
    switch (mode) {
      case CameraMode::front:
      case CameraMode::fisheye:
      case CameraMode::split:  // the forward half; the other half looks straight down
        m.pitch_down = deg_to_rad(10.0);
        break;
      case CameraMode::diagonal: m.pitch_down = deg_to_rad(45.0); break;
      case CameraMode::bottom: m.pitch_down = deg_to_rad(90.0); break;
    }
    return m;
  }
};

inline double dfov_for_mode(CameraMode mode) {
  return mode == CameraMode::fisheye ? deg_to_rad(150.0) : deg_to_rad(82.6);
}

/// Camera selection used for datasets, flights and renders.
struct CameraConfig {
  CameraMode mode = CameraMode::fisheye;
  int width = 160;
  int height = 120;

  CameraIntrinsics intrinsics() const {
    return CameraIntrinsics::make(width, height, dfov_for_mode(mode));
  }
  CameraMount mount() const { return CameraMount::for_mode(mode); }
};

struct ViewBasis {
  Vec3 eye;
  Vec3 forward;  // optical axis
  Vec3 up;       // image up
  Vec3 right;    // image right
};

/// Camera frame for a drone pose. Body +x pitched down about body y, then yawed.
inline ViewBasis view_basis(const Pose& drone_pose, const Vec3& offset, double pitch_down) {
  const double c = std::cos(pitch_down), s = std::sin(pitch_down);
  ViewBasis b;
  b.eye = drone_pose.position + rotate_body_to_world(offset, drone_pose.yaw);
  b.forward = rotate_body_to_world({c, 0.0, -s}, drone_pose.yaw);
  b.up = rotate_body_to_world({s, 0.0, c}, drone_pose.yaw);
  b.right = cross(b.forward, b.up);
  return b;
}

inline ViewBasis view_basis(const Pose& drone_pose, const CameraMount& mount) {
  return view_basis(drone_pose, mount.offset, mount.pitch_down);
}

/// Pinhole ray through continuous image coordinates (u right, v down, in
/// pixels; pixel (i, j) spans [i, i+1) x [j, j+1)).
inline Ray ray_through(const CameraIntrinsics& intr, const ViewBasis& basis, double u, double v) {
  const double tan_v = std::tan(intr.vfov * 0.5);
  const double tan_h = tan_v * intr.aspect();
  const double ndc_x = 2.0 * u / intr.width - 1.0;
  const double ndc_y = 1.0 - 2.0 * v / intr.height;
  const Vec3 dir = basis.forward + basis.right * (ndc_x * tan_h) + basis.up * (ndc_y * tan_v);
  return {basis.eye, normalized(dir)};
}

inline Ray primary_ray(const CameraIntrinsics& intr, const ViewBasis& basis, int px, int py) {
  return ray_through(intr, basis, px + 0.5, py + 0.5);
}

}  // namespace dronesim
