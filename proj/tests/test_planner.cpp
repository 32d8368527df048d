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

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "dronesim/planner.hpp"
#include "dronesim/scenario.hpp"
#include "dronesim/scene_json.hpp"

using namespace dronesim;

namespace {

using C = FlightCommand;

Scene open_room(Vec3 start, double yaw, double px, double py) {
  Scene s;
  s.drone_start = {{start.x, start.y, kDroneHalfExtents.z}, yaw};
  s.platform = {px, py, 0.0};
  return s;
}

// Replays a path with the simple executor; true when every command moves the
// drone and the final pose lies within the break radius.
bool replays_to_goal(const Scene& s, const DroneState& start, const std::vector<C>& path,
                     const PlannerConfig& cfg) {
  DroneState st = start;
  for (C c : path) {
    if (execute_simple(st, s, c, cfg.drone).status != CommandStatus::moved) return false;
  }
  return distance(st.pose.position, s.platform.center()) < cfg.break_radius;
}

}  // namespace

TEST(PoseKey, CubeAndYawBuckets) {
  const PlannerConfig cfg;
  EXPECT_NEAR(cfg.cube_edge, 0.1414, 1e-4);
  const PoseKey k = pose_key({{0.15, 0.15, 0.5}, 0.0}, cfg);
  EXPECT_EQ(k, (PoseKey{1, 1, 3, 0}));
  EXPECT_EQ(pose_key({{0.15, 0.15, 0.5}, deg_to_rad(355)}, cfg).yaw_bucket, 0);
  EXPECT_EQ(pose_key({{0.15, 0.15, 0.5}, deg_to_rad(354.9)}, cfg).yaw_bucket, 35);
  EXPECT_EQ(pose_key({{0.15, 0.15, 0.5}, deg_to_rad(15)}, cfg).yaw_bucket, 2);
  EXPECT_EQ(pose_key({{0.15, 0.15, 0.5}, deg_to_rad(-10)}, cfg).yaw_bucket, 35);
}

TEST(PoseKey, RotationStepsLandInDistinctBuckets) {
  const PlannerConfig cfg;
  Pose p{{1, 1, 1}, 0.0};
  std::vector<int> seen(36, 0);
  for (int i = 0; i < 36; ++i) {
    ++seen.at(static_cast<std::size_t>(pose_key(p, cfg).yaw_bucket));
    p = rotated_pose(p, C::ccw, cfg.drone);
  }
  for (int n : seen) EXPECT_EQ(n, 1);
}

TEST(IterationBound, SmallRooms) {
  PlannerConfig cfg;
  cfg.cube_edge = 0.5;
  cfg.yaw_step_deg = 360;
  EXPECT_EQ(iteration_bound({0.5, 0.5, 0.5}, cfg), 1u);
  cfg.yaw_step_deg = 90;
  EXPECT_EQ(iteration_bound({1.0, 1.0, 1.0}, cfg), 32u);
  EXPECT_DOUBLE_EQ(iteration_bound_continuous({1.0, 1.0, 1.0}, cfg), 32.0);
}

TEST(IterationBound, DefaultRoom) {
  const PlannerConfig cfg;
  // ceil(3.3 / c) = 24, ceil(2.5 / c) = 18, 36 yaw buckets.
  EXPECT_EQ(iteration_bound({}, cfg), 24u * 24u * 18u * 36u);
  EXPECT_NEAR(iteration_bound_continuous({}, cfg), 3.3 * 3.3 * 2.5 / std::pow(cfg.cube_edge, 3) * 36,
              1e-6);
}

TEST(PlannerConfig, Validation) {
  PlannerConfig cfg;
  cfg.yaw_step_deg = 7;
  EXPECT_THROW(cfg.validate(), InvalidArgument);
  cfg = {};
  cfg.cube_edge = 0;
  EXPECT_THROW(cfg.validate(), InvalidArgument);
  cfg = {};
  cfg.break_radius = -1;
  EXPECT_THROW(cfg.validate(), InvalidArgument);
}

TEST(Planner, StraightLine) {
  const Scene s = load_scene(std::string(DRONESIM_DATA_DIR) + "/scenes/empty_room.json");
  const PlanResult r = optimal_flight_path(s);
  ASSERT_TRUE(r.found);
  EXPECT_EQ(r.status, PlanStatus::found);
  EXPECT_EQ(r.path, (std::vector<C>{C::takeoff, C::forward, C::forward, C::forward, C::forward,
                                    C::forward, C::land}));
}

TEST(Planner, TurnAround) {
  // Platform straight behind: 18 rotations either way, then 5 forwards.
  const Scene s = open_room({2.0, 1.65, 0}, 0.0, 1.0, 1.65);
  const PlanResult r = optimal_flight_path(s);
  ASSERT_TRUE(r.found);
  EXPECT_EQ(r.path.size(), 1u + 18u + 5u + 1u);
  EXPECT_TRUE(replays_to_goal(s, start_state(s, s.drone_start), r.path, {}));
}

TEST(Planner, AlreadyAtGoalIsEmpty) {
  Scene s = open_room({1.0, 1.0, 0}, 0.0, 2.0, 2.0);
  DroneState st = DroneState::resting({{2.0, 2.0, 0.035}, 0.0});
  const PlanResult r = optimal_flight_path(s, st);
  EXPECT_TRUE(r.found);
  EXPECT_TRUE(r.path.empty());
}

TEST(Planner, UnreachablePlatform) {
  Scene s = open_room({1.0, 1.0, 0}, 0.0, 2.5, 2.5);
  const double h = 1.25;
  s.cuboids = {{{2.5, 2.0, h}, 0, {0.5, 0.05, h}},
               {{2.5, 3.0, h}, 0, {0.5, 0.05, h}},
               {{2.0, 2.5, h}, 0, {0.05, 0.5, h}},
               {{3.0, 2.5, h}, 0, {0.05, 0.5, h}}};
  const PlanResult r = optimal_flight_path(s);
  EXPECT_FALSE(r.found);
  EXPECT_EQ(r.status, PlanStatus::exhausted);
  EXPECT_LE(r.visited, iteration_bound(s.room, PlannerConfig{}));
}

TEST(Planner, IterationCap) {
  const Scene s = open_room({0.5, 0.5, 0}, 0.0, 2.8, 2.8);
  PlannerConfig cfg;
  cfg.max_iterations = 50;
  const PlanResult r = optimal_flight_path(s, cfg);
  EXPECT_FALSE(r.found);
  EXPECT_EQ(r.status, PlanStatus::iteration_cap);
  EXPECT_LE(r.iterations, 50u);
}

TEST(Planner, BreadthFirstOrder) {
  const Scene s = open_room({0.5, 0.5, 0}, 1.0, 2.5, 2.0);
  std::vector<std::size_t> depths;
  const PlanResult r = optimal_flight_path(s, start_state(s, s.drone_start), {},
                                           [&](std::size_t d) { depths.push_back(d); });
  ASSERT_TRUE(r.found);
  ASSERT_FALSE(depths.empty());
  for (std::size_t i = 1; i < depths.size(); ++i) ASSERT_LE(depths[i - 1], depths[i]);
  EXPECT_EQ(depths.size(), r.iterations);
}

TEST(Planner, RandomScenesRespectTheBoundAndReplay) {
  const EnvParams env;
  const PlannerConfig cfg;
  const auto bound = iteration_bound(env.room, cfg);
  for (std::uint64_t i = 0; i < 25; ++i) {
    Rng rng = Rng::substream(99, i);
    const Scene s = generate_scenario(rng, env);
    const PlanResult r = optimal_flight_path(s, cfg);
    EXPECT_LE(r.visited, bound);
    EXPECT_LE(r.iterations, r.visited);
    if (r.found) {
      EXPECT_TRUE(replays_to_goal(s, start_state(s, s.drone_start), r.path, cfg)) << i;
      EXPECT_EQ(r.path.front(), C::takeoff);
      EXPECT_EQ(r.path.back(), C::land);
    }
  }
}

TEST(Planner, Deterministic) {
  Rng a(5), b(5);
  const Scene s1 = generate_scenario(a, EnvParams{});
  const Scene s2 = generate_scenario(b, EnvParams{});
  const PlanResult r1 = optimal_flight_path(s1), r2 = optimal_flight_path(s2);
  EXPECT_EQ(r1.path, r2.path);
  EXPECT_EQ(r1.visited, r2.visited);
}

TEST(NaiveOracle, NeverLongerThanThePlanner) {
  // Small open-room instances where the exact search is cheap.
  Rng rng(17);
  const PlannerConfig cfg;
  for (int i = 0; i < 12; ++i) {
    const double yaw = deg_to_rad(10.0 * static_cast<double>(rng.uniform_int(0, 35)));
    const Scene s = open_room({1.0, 1.0, 0}, yaw, 1.0 + rng.uniform(0.4, 0.9), 1.0 + rng.uniform(-0.3, 0.3));
    const DroneState st = start_state(s, s.drone_start);
    const PlanResult fast = optimal_flight_path(s, st, cfg);
    ASSERT_TRUE(fast.found);
    const PlanResult exact = naive_bfs(s, st, cfg, fast.path.size(), NaiveOptions{true});
    ASSERT_TRUE(exact.found) << i;
    EXPECT_LE(exact.path.size(), fast.path.size());
    EXPECT_TRUE(replays_to_goal(s, st, exact.path, cfg));
  }
}

TEST(NaiveOracle, BoundPruningKeepsLengths) {
  const Scene s = open_room({1.0, 1.0, 0}, deg_to_rad(40), 1.6, 1.4);
  const DroneState st = start_state(s, s.drone_start);
  const PlannerConfig cfg;
  const PlanResult plain = naive_bfs(s, st, cfg, 9);
  const PlanResult pruned = naive_bfs(s, st, cfg, 9, NaiveOptions{true});
  ASSERT_EQ(plain.found, pruned.found);
  if (plain.found) {
    EXPECT_EQ(plain.path.size(), pruned.path.size());
  }
  EXPECT_LE(pruned.visited, plain.visited);
}

TEST(NaiveOracle, LowerBoundIsAdmissibleAlongOptimalPaths) {
  Rng rng(3);
  const PlannerConfig cfg;
  for (int i = 0; i < 8; ++i) {
    const double yaw = deg_to_rad(10.0 * static_cast<double>(rng.uniform_int(0, 35)));
    const Scene s = open_room({1.2, 1.2, 0}, yaw, 1.2 + rng.uniform(0.3, 0.8), 1.2 + rng.uniform(0.3, 0.8));
    DroneState st = start_state(s, s.drone_start);
    const PlanResult fast = optimal_flight_path(s, st, cfg);
    ASSERT_TRUE(fast.found);
    const PlanResult exact = naive_bfs(s, st, cfg, fast.path.size(), NaiveOptions{true});
    ASSERT_TRUE(exact.found);
    const std::size_t n = exact.path.size();
    for (std::size_t k = 0; k < n; ++k) {
      EXPECT_LE(remaining_commands_lower_bound(s, st.pose, st.airborne, cfg), n - k);
      execute_simple(st, s, exact.path[k], cfg.drone);
    }
    EXPECT_EQ(remaining_commands_lower_bound(s, st.pose, st.airborne, cfg), 0u);
  }
}

TEST(StartState, FloorAndAir) {
  const Scene s = open_room({1.0, 1.0, 0}, 0.0, 2.5, 2.5);
  EXPECT_FALSE(start_state(s, {{1.0, 1.0, 0.025}, 0}).airborne);
  EXPECT_TRUE(start_state(s, {{1.0, 1.0, 0.6}, 0}).airborne);
}
