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
#include <vector>

#include "dronesim/camera.hpp"
#include "dronesim/dataset.hpp"
#include "dronesim/errors.hpp"
#include "dronesim/parallel.hpp"
#include "dronesim/planner.hpp"
#include "dronesim/render.hpp"
#include "dronesim/scenario.hpp"

namespace dronesim {

struct DatagenConfig {
  std::uint64_t seed = 0;
  EnvParams env;
  PlannerConfig planner;
  CameraConfig camera;
  std::uint8_t prev_k = 2;
  unsigned workers = 1;
};

namespace detail {

inline Sample capture_sample(const Scene& scene, const DroneState& state,
                             const CameraConfig& camera, const std::vector<std::uint8_t>& prev,
                             std::uint32_t flight_id, FlightCommand label) {
  const SensorReadings sensors = read_sensors(state);
  Sample s;
  s.flight_id = flight_id;
  s.label = static_cast<std::uint8_t>(code_of(label));
  s.height_m = static_cast<float>(sensors.height_m);
  s.tof_m = static_cast<float>(sensors.tof_m);
  s.cmd_count = static_cast<float>(sensors.cmd_count);
  s.prev_cmds = prev;
  s.pixels = render(scene, camera, state.pose).pixels;
  return s;
}

inline Dataset empty_dataset(const DatagenConfig& cfg) {
  Dataset ds;
  ds.width = static_cast<std::uint16_t>(cfg.camera.width);
  ds.height = static_cast<std::uint16_t>(cfg.camera.height);
  ds.prev_k = cfg.prev_k;
  return ds;
}

}  // namespace detail

/// All samples of one planned flight: before every path command the camera
/// and sensors are captured, then the command is executed.
inline std::vector<Sample> record_flight(std::uint32_t flight_id, const DatagenConfig& cfg) {
  const SolvableScenario sc =
      generate_solvable_scenario(cfg.seed, flight_id, cfg.env, cfg.planner);
  DroneState state = start_state(sc.scene, sc.scene.drone_start, cfg.planner.drone);
  std::vector<std::uint8_t> prev(cfg.prev_k, kNoCommand);
  std::vector<Sample> samples;
  samples.reserve(sc.plan.path.size());
  for (FlightCommand cmd : sc.plan.path) {
    samples.push_back(detail::capture_sample(sc.scene, state, cfg.camera, prev, flight_id, cmd));
    if (execute_simple(state, sc.scene, cmd, cfg.planner.drone).status != CommandStatus::moved) {
      throw Error("planned command failed on replay");
    }
    detail::push_history(prev, static_cast<std::uint8_t>(code_of(cmd)));
  }
  return samples;
}

/// Labels every state along optimal flights, one fresh scenario per flight,
/// until exactly `size` samples exist. Flights are keyed by (seed, index),
/// so the output does not depend on the worker count.
inline Dataset generate_dataset(std::size_t size, const DatagenConfig& cfg) {
  if (size == 0) throw InvalidArgument("dataset size must be positive");
  cfg.env.validate();
  cfg.planner.validate();
  Dataset ds = detail::empty_dataset(cfg);
  ds.samples.reserve(size);
  const std::size_t batch = std::max<std::size_t>(8, 2 * static_cast<std::size_t>(cfg.workers));
  std::uint32_t next_flight = 0;
  while (ds.samples.size() < size) {
    const std::uint32_t first = next_flight;
    auto flights = parallel_map(batch, cfg.workers, [&](std::size_t i) {
      return record_flight(first + static_cast<std::uint32_t>(i), cfg);
    });
    next_flight += static_cast<std::uint32_t>(batch);
    for (auto& flight : flights) {
      for (auto& s : flight) {
        if (ds.samples.size() == size) break;
        ds.samples.push_back(std::move(s));
      }
    }
  }
  ds.flight_count = count_flights(ds.samples);
  return ds;
}

/// A scene plus a uniformly drawn drone pose anywhere in the room volume.
struct NaivePlacement {
  Scene scene;
  DroneState state;
  PlanResult plan;
};

/// One placement for naive collection. Drone poses overlapping an obstacle or
/// with an empty or missing plan are re-drawn from the same substream.
inline NaivePlacement draw_naive_placement(std::uint64_t seed, std::uint64_t index,
                                           const DatagenConfig& cfg) {
  Rng rng = Rng::substream(seed, index);
  const Vec3& half = cfg.planner.drone.half_extents;
  const double margin = std::hypot(half.x, half.y);
  for (int attempt = 0; attempt < cfg.env.max_attempts; ++attempt) {
    NaivePlacement p;
    p.scene = generate_scenario(rng, cfg.env);
    const RoomDims& room = p.scene.room;
    const Pose pose{{rng.uniform(margin, room.w - margin), rng.uniform(margin, room.d - margin),
                     rng.uniform(half.z, room.h - half.z)},
                    rng.uniform(0.0, kTwoPi)};
    const Footprint fp = drone_footprint(pose, half);
    bool blocked = false;
    for (const Cuboid& c : p.scene.cuboids) {
      if (pose.position.z - half.z < 2.0 * c.half_extents.z && footprints_overlap(fp, c.footprint())) {
        blocked = true;
      }
    }
    if (pose.position.z - half.z < LandingPlatform::kThickness &&
        footprints_overlap(fp, p.scene.platform.footprint())) {
      blocked = true;
    }
    if (blocked) continue;
    p.scene.drone_start = {{pose.position.x, pose.position.y, half.z}, pose.yaw};
    p.state = start_state(p.scene, pose, cfg.planner.drone);
    // Airborne spawns measure height and distance from the floor point below.
    p.state.takeoff_pose = p.scene.drone_start;
    p.plan = optimal_flight_path(p.scene, p.state, cfg.planner);
    if (p.plan.found && !p.plan.path.empty()) return p;
  }
  throw PlacementExhausted("no plannable naive placement within the attempt budget");
}

/// One sample per random placement, labeled with the first optimal command.
inline Dataset generate_dataset_naive(std::size_t size, const DatagenConfig& cfg) {
  if (size == 0) throw InvalidArgument("dataset size must be positive");
  cfg.env.validate();
  cfg.planner.validate();
  Dataset ds = detail::empty_dataset(cfg);
  const std::vector<std::uint8_t> prev(cfg.prev_k, kNoCommand);
  ds.samples = parallel_map(size, cfg.workers, [&](std::size_t i) {
    const NaivePlacement p = draw_naive_placement(cfg.seed, i, cfg);
    return detail::capture_sample(p.scene, p.state, cfg.camera, prev,
                                  static_cast<std::uint32_t>(i), p.plan.path.front());
  });
  ds.flight_count = count_flights(ds.samples);
  return ds;
}

}  // namespace dronesim
