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
#include <cstdint>
#include <functional>
#include <unordered_set>
#include <vector>

#include "dronesim/drone.hpp"
#include "dronesim/errors.hpp"
#include "dronesim/scene.hpp"

namespace dronesim {

struct PlannerConfig {
  double cube_edge = 0.20 / std::numbers::sqrt2;  // meters; a 45 degree forward step spans one cube
  double yaw_step_deg = 10.0;
  double break_radius = 0.10;  // meters from the platform center
  std::size_t max_iterations = 2'000'000;
  DroneConfig drone;

  int yaw_buckets() const { return static_cast<int>(std::lround(360.0 / yaw_step_deg)); }

  void validate() const {
    if (!(cube_edge > 0.0)) throw InvalidArgument("cube edge must be positive");
    if (!(yaw_step_deg > 0.0) || std::abs(360.0 / yaw_step_deg - yaw_buckets()) > 1e-9) {
      throw InvalidArgument("yaw step must divide 360 degrees");
    }
    if (!(break_radius > 0.0)) throw InvalidArgument("break radius must be positive");
  }
};

/// Discretized pose: cube index per axis plus rounded yaw bucket.
struct PoseKey {
  std::int32_t cx = 0;
  std::int32_t cy = 0;
  std::int32_t cz = 0;
  std::int32_t yaw_bucket = 0;

  friend bool operator==(const PoseKey&, const PoseKey&) = default;
};

struct PoseKeyHash {
  std::size_t operator()(const PoseKey& k) const noexcept {
    std::uint64_t h = static_cast<std::uint32_t>(k.cx);
    h = h * 0x100000001B3ull ^ static_cast<std::uint32_t>(k.cy);
    h = h * 0x100000001B3ull ^ static_cast<std::uint32_t>(k.cz);
    h = h * 0x100000001B3ull ^ static_cast<std::uint32_t>(k.yaw_bucket);
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

inline PoseKey pose_key(const Pose& pose, const PlannerConfig& cfg) {
  const double c = cfg.cube_edge;
  const int buckets = cfg.yaw_buckets();
  // Half-up rounding with a little slack so 355 deg lands in bucket 36 == 0.
  const double steps = rad_to_deg(normalize_angle(pose.yaw)) / cfg.yaw_step_deg;
  const auto bucket = static_cast<std::int32_t>(std::floor(steps + 0.5 + 1e-9)) % buckets;
  return {static_cast<std::int32_t>(std::floor(pose.position.x / c)),
          static_cast<std::int32_t>(std::floor(pose.position.y / c)),
          static_cast<std::int32_t>(std::floor(pose.position.z / c)), bucket};
}

/// Number of distinct pose cells in the room: ceil(w/c) ceil(d/c) ceil(h/c) (360/y).
inline std::uint64_t iteration_bound(const RoomDims& room, const PlannerConfig& cfg) {
  auto cells = [&](double len) {
    return static_cast<std::uint64_t>(std::ceil(len / cfg.cube_edge - 1e-9));
  };
  return cells(room.w) * cells(room.d) * cells(room.h) *
         static_cast<std::uint64_t>(cfg.yaw_buckets());
}

/// The same bound without rounding cell counts up: (w d h / c^3) (360 / y).
inline double iteration_bound_continuous(const RoomDims& room, const PlannerConfig& cfg) {
  const double c = cfg.cube_edge;
  return room.w * room.d * room.h / (c * c * c) * (360.0 / cfg.yaw_step_deg);
}

enum class PlanStatus { found, exhausted, iteration_cap, depth_limit };

struct PlanResult {
  std::vector<FlightCommand> path;
  std::size_t iterations = 0;
  std::size_t visited = 0;
  bool found = false;
  PlanStatus status = PlanStatus::exhausted;
};

/// Invoked for every dequeued node with its depth (path length).
using DequeueObserver = std::function<void(std::size_t depth)>;

/// Start state for a plan from a bare pose: grounded when the body rests on
/// the surface below it.
inline DroneState start_state(const Scene& scene, const Pose& pose, const DroneConfig& cfg = {}) {
  DroneState s = DroneState::resting(pose);
  const double rest_z = support_height_below(s, scene, cfg.half_extents) + cfg.half_extents.z;
  s.airborne = pose.position.z > rest_z + 1e-9;
  return s;
}

namespace detail {

struct SearchNode {
  Pose pose;
  bool airborne;
  std::int64_t parent;
  FlightCommand cmd;
  std::uint32_t depth;
};

inline std::vector<FlightCommand> unwind(const std::vector<SearchNode>& nodes, std::int64_t idx) {
  std::vector<FlightCommand> path(nodes[idx].depth);
  for (std::int64_t i = idx; nodes[i].parent >= 0; i = nodes[i].parent) {
    path[nodes[i].depth - 1] = nodes[i].cmd;
  }
  return path;
}

/// Breadth-first search over poses. `admit` decides whether a child is new.
/// Children are generated in command-code order, so results are deterministic.
template <typename Admit>
PlanResult breadth_first(const Scene& scene, const DroneState& start, const PlannerConfig& cfg,
                         std::size_t depth_limit, Admit&& admit, const DequeueObserver& observer) {
  const Vec3 goal = scene.platform.center();
  PlanResult result;
  std::vector<SearchNode> nodes;
  nodes.push_back({start.pose, start.airborne, -1, FlightCommand::takeoff, 0});
  admit(start.pose, start.airborne, 0u);
  bool cut_at_depth = false;

  // `nodes` doubles as the FIFO queue: entries are consumed in push order.
  for (std::size_t head = 0; head < nodes.size(); ++head) {
    if (result.iterations >= cfg.max_iterations) {
      result.status = PlanStatus::iteration_cap;
      return result;
    }
    ++result.iterations;
    const SearchNode node = nodes[head];
    if (observer) observer(node.depth);
    if (distance(node.pose.position, goal) < cfg.break_radius) {
      result.path = unwind(nodes, static_cast<std::int64_t>(head));
      result.found = true;
      result.status = PlanStatus::found;
      return result;
    }
    if (node.depth >= depth_limit) {
      cut_at_depth = true;
      continue;
    }
    for (FlightCommand cmd : kAllCommands) {
      DroneState scratch{node.pose, node.airborne, node.pose, 0};
      if (execute_simple(scratch, scene, cmd, cfg.drone).status != CommandStatus::moved) continue;
      if (!admit(scratch.pose, scratch.airborne, node.depth + 1)) continue;
      nodes.push_back({scratch.pose, scratch.airborne, static_cast<std::int64_t>(head), cmd,
                       node.depth + 1});
    }
  }
  result.status = cut_at_depth ? PlanStatus::depth_limit : PlanStatus::exhausted;
  return result;
}

}  // namespace detail

/// Minimum-command flight from `start` to a pose within break_radius of the
/// platform center. Children whose pose cell was already discovered are
/// pruned, which bounds the work by iteration_bound().
inline PlanResult optimal_flight_path(const Scene& scene, const DroneState& start,
                                      const PlannerConfig& cfg = {},
                                      const DequeueObserver& observer = {}) {
  cfg.validate();
  std::unordered_set<PoseKey, PoseKeyHash> visited;
  auto admit = [&](const Pose& pose, bool, std::uint32_t) {
    return visited.insert(pose_key(pose, cfg)).second;
  };
  PlanResult r = detail::breadth_first(scene, start, cfg, SIZE_MAX, admit, observer);
  r.visited = visited.size();
  return r;
}

inline PlanResult optimal_flight_path(const Scene& scene, const PlannerConfig& cfg = {}) {
  return optimal_flight_path(scene, start_state(scene, scene.drone_start, cfg.drone), cfg);
}

/// Admissible estimate of the commands still needed from a state: the final
/// land (plus a takeoff when grounded), the forward steps to cover the
/// horizontal gap, and one rotation when the heading ray misses the goal disk.
inline std::size_t remaining_commands_lower_bound(const Scene& scene, const Pose& pose,
                                                  bool airborne, const PlannerConfig& cfg) {
  const Vec3 goal = scene.platform.center();
  if (distance(pose.position, goal) < cfg.break_radius) return 0;
  // With a takeoff altitude above the radius no airborne pose can qualify.
  const bool must_land = cfg.drone.takeoff_altitude >= cfg.break_radius;
  std::size_t bound = must_land ? (airborne ? 1 : 2) : 0;
  const double gap = horizontal_distance(pose.position, goal) - cfg.break_radius;
  if (gap > 0.0) {
    bound += static_cast<std::size_t>(std::ceil(gap / cfg.drone.forward_step - 1e-9));
    const Vec3 heading = rotate_body_to_world({1, 0, 0}, pose.yaw);
    const Vec3 to_goal{goal.x - pose.position.x, goal.y - pose.position.y, 0.0};
    const double along = dot(to_goal, heading);
    const double across = std::abs(heading.x * to_goal.y - heading.y * to_goal.x);
    const bool ray_reaches = along > 0.0 ? across < cfg.break_radius
                                         : norm(to_goal) < cfg.break_radius;
    if (!ray_reaches) bound += 1;
  }
  return bound;
}

struct NaiveOptions {
  /// Drop children that cannot finish within depth_limit according to
  /// remaining_commands_lower_bound(). The bound is admissible, so lengths
  /// are unchanged; only the work shrinks.
  bool bound_pruning = false;
};

/// Exact breadth-first search without cell pruning; only poses equal to
/// micrometer / micro-degree resolution are merged. Test oracle.
inline PlanResult naive_bfs(const Scene& scene, const DroneState& start, const PlannerConfig& cfg,
                            std::size_t depth_limit, NaiveOptions opts = {}) {
  struct ExactKey {
    std::int64_t x, y, z, yaw;
    bool airborne;
    bool operator==(const ExactKey&) const = default;
  };
  struct ExactHash {
    std::size_t operator()(const ExactKey& k) const noexcept {
      std::uint64_t h = 1469598103934665603ull;
      for (std::int64_t v : {k.x, k.y, k.z, k.yaw, static_cast<std::int64_t>(k.airborne)}) {
        h = (h ^ static_cast<std::uint64_t>(v)) * 0x100000001B3ull;
      }
      return static_cast<std::size_t>(h ^ (h >> 31));
    }
  };
  constexpr std::int64_t kFullTurn = 360'000'000;
  std::unordered_set<ExactKey, ExactHash> seen;
  bool pruned = false;
  auto admit = [&](const Pose& pose, bool airborne, std::uint32_t depth) {
    if (opts.bound_pruning &&
        depth + remaining_commands_lower_bound(scene, pose, airborne, cfg) > depth_limit) {
      pruned = true;
      return false;
    }
    const ExactKey key{std::llround(pose.position.x * 1e6), std::llround(pose.position.y * 1e6),
                       std::llround(pose.position.z * 1e6),
                       std::llround(rad_to_deg(pose.yaw) * 1e6) % kFullTurn, airborne};
    return seen.insert(key).second;
  };
  PlannerConfig unlimited = cfg;
  unlimited.max_iterations = SIZE_MAX;
  PlanResult r = detail::breadth_first(scene, start, unlimited, depth_limit, admit, {});
  r.visited = seen.size();
  if (!r.found && pruned) r.status = PlanStatus::depth_limit;
  return r;
}

inline bool scenario_is_solvable(const Scene& scene, const PlannerConfig& cfg = {}) {
  return optimal_flight_path(scene, cfg).found;
}

}  // namespace dronesim
