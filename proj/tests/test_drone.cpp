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

#include <gtest/gtest.h>

#include "dronesim/drone.hpp"
#include "dronesim/scenario.hpp"

using namespace dronesim;

namespace {

Scene open_room() {
  Scene s;
  s.platform = {2.8, 2.8, 0.0};
  s.drone_start = {{1.0, 1.0, kDroneHalfExtents.z}, 0.0};
  return s;
}

}  // namespace

TEST(Commands, TokensRoundTrip) {
  for (FlightCommand c : kAllCommands) {
    EXPECT_EQ(command_from_string(to_string(c)), c);
    EXPECT_EQ(command_from_code(code_of(c)), c);
  }
  EXPECT_FALSE(command_from_string("hover"));
  EXPECT_FALSE(command_from_code(5));
  EXPECT_EQ(code_of(FlightCommand::takeoff), 0);
  EXPECT_EQ(code_of(FlightCommand::ccw), 4);
}

TEST(Commands, GroundedOnlyTakesOff) {
  const Scene s = open_room();
  DroneState st = DroneState::resting(s.drone_start);
  for (FlightCommand c : {FlightCommand::land, FlightCommand::forward, FlightCommand::cw,
                          FlightCommand::ccw}) {
    const auto r = execute_simple(st, s, c);
    EXPECT_EQ(r.status, CommandStatus::invalid);
    EXPECT_EQ(st.pose, s.drone_start);
    EXPECT_EQ(st.commands_executed, 0u);
  }
}

TEST(Commands, AirborneCannotTakeOffAgain) {
  const Scene s = open_room();
  DroneState st = DroneState::resting(s.drone_start);
  ASSERT_EQ(execute_simple(st, s, FlightCommand::takeoff).status, CommandStatus::moved);
  const Pose before = st.pose;
  EXPECT_EQ(execute_simple(st, s, FlightCommand::takeoff).status, CommandStatus::invalid);
  EXPECT_EQ(st.pose, before);
  EXPECT_EQ(st.commands_executed, 1u);
}

TEST(Commands, TakeoffForwardSensors) {
  const Scene s = open_room();
  DroneState st = DroneState::resting(s.drone_start);
  execute_simple(st, s, FlightCommand::takeoff);
  EXPECT_NEAR(st.pose.position.z, 0.525, 1e-12);
  execute_simple(st, s, FlightCommand::forward);
  EXPECT_NEAR(st.pose.position.x, 1.2, 1e-12);
  const SensorReadings r = read_sensors(st);
  EXPECT_NEAR(r.height_m, 0.5, 1e-12);
  EXPECT_NEAR(r.tof_m, std::hypot(0.5, 0.2), 1e-12);
  EXPECT_NEAR(r.tof_m, 0.5385, 1e-4);
  EXPECT_EQ(r.cmd_count, 2u);
}

TEST(Commands, RotationsStepTenDegrees) {
  const Scene s = open_room();
  DroneState st = DroneState::resting(s.drone_start);
  execute_simple(st, s, FlightCommand::takeoff);
  execute_simple(st, s, FlightCommand::ccw);
  EXPECT_NEAR(st.pose.yaw, deg_to_rad(10), 1e-12);
  execute_simple(st, s, FlightCommand::cw);
  execute_simple(st, s, FlightCommand::cw);
  EXPECT_NEAR(st.pose.yaw, deg_to_rad(350), 1e-12);
  for (int i = 0; i < 37; ++i) execute_simple(st, s, FlightCommand::ccw);
  EXPECT_NEAR(angle_difference(st.pose.yaw, 0.0), 0.0, 1e-9);
}

TEST(Commands, ForwardFollowsHeading) {
  Scene s = open_room();
  s.drone_start.yaw = kPi / 2;
  DroneState st = DroneState::resting(s.drone_start);
  execute_simple(st, s, FlightCommand::takeoff);
  execute_simple(st, s, FlightCommand::forward);
  EXPECT_NEAR(st.pose.position.x, 1.0, 1e-12);
  EXPECT_NEAR(st.pose.position.y, 1.2, 1e-12);
}

TEST(Commands, WallCrashLeavesPoseUnchanged) {
  Scene s = open_room();
  s.drone_start = {{3.3 - 0.15, 1.0, kDroneHalfExtents.z}, 0.0};
  DroneState st = DroneState::resting(s.drone_start);
  execute_simple(st, s, FlightCommand::takeoff);
  const Pose before = st.pose;
  const auto r = execute_simple(st, s, FlightCommand::forward);
  EXPECT_EQ(r.status, CommandStatus::crashed);
  EXPECT_EQ(st.pose, before);
  EXPECT_EQ(st.commands_executed, 1u);
}

TEST(Commands, SweepCornersCatchGrazingObstacles) {
  // A thin post in line with the body's side edge: the center ray misses
  // it, a corner ray does not.
  Scene s = open_room();
  s.cuboids.push_back({{1.15, 1.09, 1.25}, 0.0, {0.01, 0.01, 1.25}});
  ASSERT_TRUE(scene_issues(s).empty());
  DroneState st = DroneState::resting({{1.0, 1.0, 2.2}, 0.0});
  st.airborne = true;
  EXPECT_FALSE(ray_intersect(st.pose.position, {1, 0, 0}, s.cuboids[0]));
  EXPECT_EQ(execute_simple(st, s, FlightCommand::forward).status, CommandStatus::crashed);
}

TEST(Commands, CeilingBlocksTakeoff) {
  Scene s = open_room();
  s.room.h = 0.4;
  DroneState st = DroneState::resting(s.drone_start);
  EXPECT_EQ(execute_simple(st, s, FlightCommand::takeoff).status, CommandStatus::crashed);
  EXPECT_FALSE(st.airborne);
}

TEST(Commands, LandOnBoxTop) {
  Scene s = open_room();
  s.cuboids.push_back({{1.6, 1.0, 0.15}, 0.0, {0.2, 0.2, 0.15}});
  DroneState st = DroneState::resting(s.drone_start);
  execute_simple(st, s, FlightCommand::takeoff);
  for (int i = 0; i < 3; ++i) ASSERT_EQ(execute_simple(st, s, FlightCommand::forward).status, CommandStatus::moved);
  ASSERT_EQ(execute_simple(st, s, FlightCommand::land).status, CommandStatus::moved);
  EXPECT_NEAR(st.pose.position.z, 0.30 + 0.025, 1e-12);
  EXPECT_FALSE(st.airborne);
  // Takeoff from the box resets the sensor reference.
  execute_simple(st, s, FlightCommand::takeoff);
  EXPECT_NEAR(read_sensors(st).height_m, 0.5, 1e-12);
  EXPECT_NEAR(read_sensors(st).tof_m, 0.5, 1e-12);
}

TEST(Commands, LandOnPlatform) {
  Scene s = open_room();
  s.platform = {1.4, 1.0, 0.0};
  DroneState st = DroneState::resting(s.drone_start);
  execute_simple(st, s, FlightCommand::takeoff);
  execute_simple(st, s, FlightCommand::forward);
  execute_simple(st, s, FlightCommand::forward);
  execute_simple(st, s, FlightCommand::land);
  EXPECT_NEAR(st.pose.position.z, LandingPlatform::kThickness + kDroneHalfExtents.z, 1e-12);
}

TEST(Commands, RandomWalkKeepsTheBodyInsideTheRoom) {
  Rng rng(31);
  EnvParams env;
  for (int scene_i = 0; scene_i < 30; ++scene_i) {
    const Scene s = generate_scenario(rng, env);
    DroneState st = DroneState::resting(s.drone_start);
    for (int k = 0; k < 200; ++k) {
      const FlightCommand c = kAllCommands[static_cast<std::size_t>(rng.uniform_int(0, 4))];
      const Pose before = st.pose;
      const auto r = execute_simple(st, s, c);
      if (r.status != CommandStatus::moved) {
        EXPECT_EQ(st.pose, before);
        continue;
      }
      const Vec3& p = st.pose.position;
      EXPECT_GE(p.x, 0.0);
      EXPECT_LE(p.x, s.room.w);
      EXPECT_GE(p.y, 0.0);
      EXPECT_LE(p.y, s.room.d);
      EXPECT_GE(p.z, kDroneHalfExtents.z - 1e-9);
      EXPECT_LE(p.z, s.room.h);
    }
  }
}
