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
#include <array>
#include <cassert>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

namespace dronesim {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

constexpr double deg_to_rad(double deg) { return deg * kPi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

/// World-frame vector in meters. Right-handed, z up, floor at z = 0.
struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Vec3& operator+=(const Vec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  constexpr Vec3& operator-=(const Vec3& o) {
    x -= o.x;
    y -= o.y;
    z -= o.z;
    return *this;
  }
  friend constexpr Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
  friend constexpr Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
  friend constexpr Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
  friend constexpr Vec3 operator*(const Vec3& a, double s) { return {a.x * s, a.y * s, a.z * s}; }
  friend constexpr Vec3 operator*(double s, const Vec3& a) { return a * s; }
  friend constexpr bool operator==(const Vec3&, const Vec3&) = default;
};

constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

inline Vec3 normalized(const Vec3& v) {
  const double n = norm(v);
  assert(n > 0.0);
  return v * (1.0 / n);
}

inline double distance(const Vec3& a, const Vec3& b) { return norm(a - b); }

inline double horizontal_distance(const Vec3& a, const Vec3& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

inline bool is_finite(const Vec3& v) {
  return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z);
}

/// Wraps an angle into [0, 2pi).
inline double normalize_angle(double rad) {
  double r = std::fmod(rad, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  // fmod of a tiny negative value can round up to exactly 2pi.
  if (r >= kTwoPi) r = 0.0;
  return r;
}

/// Smallest signed difference a - b, in (-pi, pi].
inline double angle_difference(double a, double b) {
  double d = normalize_angle(a - b);
  if (d > kPi) d -= kTwoPi;
  return d;
}

/// Position plus heading. The drone only rotates about world z.
struct Pose {
  Vec3 position;
  double yaw = 0.0;  // radians, [0, 2pi)

  friend constexpr bool operator==(const Pose&, const Pose&) = default;
};

/// Rotates a body-frame vector about z by `yaw`.
inline Vec3 rotate_body_to_world(const Vec3& v, double yaw) {
  const double c = std::cos(yaw);
  const double s = std::sin(yaw);
  return {c * v.x - s * v.y, s * v.x + c * v.y, v.z};
}

inline Vec3 rotate_world_to_body(const Vec3& v, double yaw) { return rotate_body_to_world(v, -yaw); }

struct Ray {
  Vec3 origin;
  Vec3 dir;  // unit length
};

struct BoxHit {
  double distance;
  Vec3 normal;  // box-local, outward
};

/// Slab test against an axis-aligned box centered at the origin. Only
/// entering hits at distance >= t_min are reported; a ray that starts inside
/// the box sees nothing.
inline std::optional<BoxHit> intersect_local_box(const Vec3& origin, const Vec3& dir,
                                                 const Vec3& half, double t_min = 0.0) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  double t_near = -inf;
  double t_far = inf;
  int near_axis = -1;
  double near_sign = 0.0;

  const double o[3] = {origin.x, origin.y, origin.z};
  const double d[3] = {dir.x, dir.y, dir.z};
  const double h[3] = {half.x, half.y, half.z};
  for (int axis = 0; axis < 3; ++axis) {
    if (d[axis] == 0.0) {
      if (o[axis] < -h[axis] || o[axis] > h[axis]) return std::nullopt;
      continue;
    }
    const double inv = 1.0 / d[axis];
    double t0 = (-h[axis] - o[axis]) * inv;
    double t1 = (h[axis] - o[axis]) * inv;
    // Entering through the face whose outward normal opposes the ray.
    double sign = d[axis] > 0.0 ? -1.0 : 1.0;
    if (t0 > t1) std::swap(t0, t1);
    if (t0 > t_near) {
      t_near = t0;
      near_axis = axis;
      near_sign = sign;
    }
    t_far = std::min(t_far, t1);
    if (t_near > t_far) return std::nullopt;
  }
  if (near_axis < 0 || t_near < t_min || t_far < 0.0) return std::nullopt;

  Vec3 n;
  if (near_axis == 0) n.x = near_sign;
  if (near_axis == 1) n.y = near_sign;
  if (near_axis == 2) n.z = near_sign;
  return BoxHit{t_near, n};
}

/// Oriented rectangle in the xy-plane, used for footprint overlap checks.
struct Footprint {
  double cx = 0.0;
  double cy = 0.0;
  double yaw = 0.0;
  double hx = 0.0;
  double hy = 0.0;
};

/// Separating-axis test for two oriented rectangles. Touching counts as overlap.
inline bool footprints_overlap(const Footprint& a, const Footprint& b) {
  const double axes[4][2] = {{std::cos(a.yaw), std::sin(a.yaw)},
                             {-std::sin(a.yaw), std::cos(a.yaw)},
                             {std::cos(b.yaw), std::sin(b.yaw)},
                             {-std::sin(b.yaw), std::cos(b.yaw)}};
  const double dx = b.cx - a.cx;
  const double dy = b.cy - a.cy;
  auto radius = [](const Footprint& f, double ax, double ay) {
    const double ux = std::cos(f.yaw), uy = std::sin(f.yaw);
    return f.hx * std::abs(ux * ax + uy * ay) + f.hy * std::abs(-uy * ax + ux * ay);
  };
  for (const auto& axis : axes) {
    const double dist = std::abs(dx * axis[0] + dy * axis[1]);
    if (dist > radius(a, axis[0], axis[1]) + radius(b, axis[0], axis[1])) return false;
  }
  return true;
}

/// World-frame corners of a footprint, counter-clockwise.
inline std::array<Vec3, 4> footprint_corners(const Footprint& f) {
  std::array<Vec3, 4> out;
  const double sx[4] = {1, -1, -1, 1};
  const double sy[4] = {1, 1, -1, -1};
  for (int i = 0; i < 4; ++i) {
    out[i] = Vec3{f.cx, f.cy, 0.0} + rotate_body_to_world({sx[i] * f.hx, sy[i] * f.hy, 0.0}, f.yaw);
  }
  return out;
}

}  // namespace dronesim
