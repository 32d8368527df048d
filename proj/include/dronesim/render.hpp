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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "dronesim/camera.hpp"
#include "dronesim/scene.hpp"

namespace dronesim {

/// Row-major grayscale image with an optional per-pixel depth raster.
struct Image {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;
  std::vector<float> depth;  // meters, empty when not captured

  Image() = default;
  Image(int w, int h) : width(w), height(h), pixels(static_cast<std::size_t>(w) * h, 0) {}

  std::uint8_t at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }

  friend bool operator==(const Image&, const Image&) = default;
};

namespace shading {

inline constexpr double kAmbient = 0.4;
inline constexpr double kDiffuse = 0.6;
inline const Vec3 kLightDir = normalized({0.3, 0.2, 1.0});

inline constexpr double kFloor = 0.75;
inline constexpr double kWall = 0.85;
inline constexpr double kCeiling = 0.9;
inline constexpr double kMarkerWhite = 0.95;
inline constexpr double kMarkerBlack = 0.05;
inline constexpr int kMarkerRings = 5;

/// Five concentric square rings on the pad top, outermost black. `u`, `v` are
/// pad-local coordinates in meters from the pad center.
inline double marker_albedo(double u, double v) {
  const double half = LandingPlatform::kSide / 2.0;
  const double ring_width = half / kMarkerRings;
  const double r = std::max(std::abs(u), std::abs(v));
  const int from_outside =
      std::clamp(static_cast<int>(std::floor((half - r) / ring_width)), 0, kMarkerRings - 1);
  return from_outside % 2 == 0 ? kMarkerBlack : kMarkerWhite;
}

inline double surface_albedo(const Scene& scene, const SceneHit& hit, const Vec3& point) {
  switch (hit.surface.kind) {
    case SurfaceKind::floor: return kFloor;
    case SurfaceKind::ceiling: return kCeiling;
    case SurfaceKind::wall_x0:
    case SurfaceKind::wall_x1:
    case SurfaceKind::wall_y0:
    case SurfaceKind::wall_y1: return kWall;
    case SurfaceKind::cuboid: return scene.cuboids[hit.surface.index].albedo;
    case SurfaceKind::platform: {
      if (hit.normal.z < 0.5) return kMarkerWhite;
      const Vec3 local = rotate_world_to_body(point - scene.platform.center(), scene.platform.yaw);
      return marker_albedo(local.x, local.y);
    }
  }
  return 0.0;
}

inline std::uint8_t shade(double albedo, const Vec3& normal) {
  const double lambert = std::max(0.0, dot(normal, kLightDir));
  const double value = 255.0 * albedo * (kAmbient + kDiffuse * lambert);
  return static_cast<std::uint8_t>(std::clamp(std::lround(value), 0L, 255L));
}

}  // namespace shading

/// Casts one ray per pixel of rows [0, rows) into `out`, starting at output
/// row `out_row`. `v_offset` shifts the sampled band of the full frame.
inline void render_band(const Scene& scene, const CameraIntrinsics& intr, const ViewBasis& basis,
                        int rows, double v_offset, int out_row, Image& out) {
  for (int py = 0; py < rows; ++py) {
    for (int px = 0; px < intr.width; ++px) {
      const Ray ray = ray_through(intr, basis, px + 0.5, py + 0.5 + v_offset);
      const std::size_t idx = static_cast<std::size_t>(out_row + py) * intr.width + px;
      auto hit = ray_intersect(ray.origin, ray.dir, scene, intr.near);
      if (!hit || hit->distance > intr.far) {
        out.pixels[idx] = 0;
        out.depth[idx] = static_cast<float>(intr.far);
        continue;
      }
      const Vec3 point = ray.origin + ray.dir * hit->distance;
      out.pixels[idx] = shading::shade(shading::surface_albedo(scene, *hit, point), hit->normal);
      out.depth[idx] = static_cast<float>(hit->distance);
    }
  }
}

/// Grayscale capture from the drone's camera. In split mode the top half of
/// the output is the downward view and the bottom half the forward view; each
/// half shows the central band of its full-frame view.
inline Image render(const Scene& scene, const CameraIntrinsics& intr, const CameraMount& mount,
                    const Pose& drone_pose) {
  Image img(intr.width, intr.height);
  img.depth.assign(img.pixels.size(), static_cast<float>(intr.far));
  if (mount.mode != CameraMode::split) {
    render_band(scene, intr, view_basis(drone_pose, mount), intr.height, 0.0, 0, img);
    return img;
  }
  const int top_rows = intr.height / 2;
  const int bottom_rows = intr.height - top_rows;
  const double band_offset = intr.height / 4.0;
  render_band(scene, intr, view_basis(drone_pose, mount.offset, deg_to_rad(90.0)), top_rows,
              band_offset, 0, img);
  render_band(scene, intr, view_basis(drone_pose, mount.offset, mount.pitch_down), bottom_rows,
              band_offset, top_rows, img);
  return img;
}

inline Image render(const Scene& scene, const CameraConfig& camera, const Pose& drone_pose) {
  return render(scene, camera.intrinsics(), camera.mount(), drone_pose);
}

}  // namespace dronesim
