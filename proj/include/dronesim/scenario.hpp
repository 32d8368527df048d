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

#include <cstdint>

#include "dronesim/errors.hpp"
#include "dronesim/planner.hpp"
#include "dronesim/rng.hpp"
#include "dronesim/scene.hpp"

namespace dronesim {

struct EnvParams {
  RoomDims room;
  int max_obstacles = 10;
  double max_edge = 2.0;  // meters, full edge length
  int max_attempts = 1000;
  double min_start_distance = 0.30;  // drone start to platform center, meters

  void validate() const {
    if (max_obstacles < 0) throw InvalidArgument("max_obstacles must be >= 0");
    if (!(max_edge > 0.0) || max_edge > std::min({room.w, room.d, room.h})) {
      throw InvalidArgument("max_edge must be in (0, min room dimension]");
    }
    if (max_attempts <= 0) throw InvalidArgument("max_attempts must be positive");
  }
};

/// Random room layout: drone and platform on the floor with uniform position
/// and yaw, then a uniform number of obstacles with uniform edge lengths,
/// positions and yaws. Placements breaking a scene invariant are re-drawn.
inline Scene generate_scenario(Rng& rng, const EnvParams& env) {
  env.validate();
  Scene scene;
  scene.room = env.room;
  const RoomDims& room = env.room;

  const double margin = std::hypot(kDroneHalfExtents.x, kDroneHalfExtents.y);
  scene.drone_start = {{rng.uniform(margin, room.w - margin), rng.uniform(margin, room.d - margin),
                        kDroneHalfExtents.z},
                       rng.uniform(0.0, kTwoPi)};
  const Footprint start = drone_footprint(scene.drone_start);

  bool placed = false;
  for (int attempt = 0; attempt < env.max_attempts && !placed; ++attempt) {
    LandingPlatform p{rng.uniform(0.0, room.w), rng.uniform(0.0, room.d), rng.uniform(0.0, kTwoPi)};
    placed = detail::footprint_inside_room(p.footprint(), room) &&
             !footprints_overlap(p.footprint(), start) &&
             horizontal_distance(p.center(), scene.drone_start.position) >= env.min_start_distance;
    if (placed) scene.platform = p;
  }
  if (!placed) throw PlacementExhausted("could not place the landing platform");

  const auto count = rng.uniform_int(0, env.max_obstacles);
  for (std::int64_t i = 0; i < count; ++i) {
    Cuboid c;
    placed = false;
    for (int attempt = 0; attempt < env.max_attempts && !placed; ++attempt) {
      // Large boxes may have no legal spot at all, so the size is re-drawn too.
      c.half_extents = {rng.uniform_open_closed(env.max_edge) / 2.0,
                        rng.uniform_open_closed(env.max_edge) / 2.0,
                        rng.uniform_open_closed(env.max_edge) / 2.0};
      c.center = {rng.uniform(0.0, room.w), rng.uniform(0.0, room.d), c.half_extents.z};
      c.yaw = rng.uniform(0.0, kTwoPi);
      placed = detail::footprint_inside_room(c.footprint(), room) &&
               !footprints_overlap(c.footprint(), scene.platform.footprint()) &&
               !footprints_overlap(c.footprint(), start);
    }
    if (!placed) throw PlacementExhausted("could not place obstacle " + std::to_string(i));
    scene.cuboids.push_back(c);
  }
  return scene;
}

struct SolvableScenario {
  Scene scene;
  PlanResult plan;
  int attempts = 1;
};

/// Draws scenarios from the (master, index) substream until the planner finds
/// a path from the spawn to the platform.
inline SolvableScenario generate_solvable_scenario(std::uint64_t master_seed, std::uint64_t index,
                                                   const EnvParams& env,
                                                   const PlannerConfig& planner = {},
                                                   int max_regenerations = 1000) {
  Rng rng = Rng::substream(master_seed, index);
  for (int attempt = 1; attempt <= max_regenerations; ++attempt) {
    Scene scene = generate_scenario(rng, env);
    PlanResult plan = optimal_flight_path(scene, planner);
    if (plan.found) return {std::move(scene), std::move(plan), attempt};
  }
  throw PlacementExhausted("no solvable scenario within the regeneration budget");
}

}  // namespace dronesim
