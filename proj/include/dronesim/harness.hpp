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

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "dronesim/camera.hpp"
#include "dronesim/dataset.hpp"
#include "dronesim/motion.hpp"
#include "dronesim/parallel.hpp"
#include "dronesim/policy.hpp"
#include "dronesim/regression.hpp"
#include "dronesim/render.hpp"
#include "dronesim/scenario.hpp"

namespace dronesim {

enum class FlightOutcome : std::uint8_t { landed_on_platform, landed_outside, crashed, did_not_land };

inline constexpr std::array<FlightOutcome, 4> kAllOutcomes{
    FlightOutcome::landed_on_platform, FlightOutcome::landed_outside, FlightOutcome::crashed,
    FlightOutcome::did_not_land};

constexpr std::string_view to_string(FlightOutcome o) {
  switch (o) {
    case FlightOutcome::landed_on_platform: return "LandedOnPlatform";
    case FlightOutcome::landed_outside: return "LandedOutside";
    case FlightOutcome::crashed: return "Crashed";
    case FlightOutcome::did_not_land: return "DidNotLand";
  }
  return "?";
}

inline constexpr double kOnPlatformRadius = 0.30;  // meters, horizontal

/// FNV-1a over the pixel bytes; identifies an observation in traces.
inline std::uint64_t image_digest(const Image& img) {
  std::uint64_t h = 1469598103934665603ull;
  for (std::uint8_t b : img.pixels) h = (h ^ b) * 0x100000001B3ull;
  return h;
}

struct FlightStep {
  std::uint64_t image_digest = 0;
  FlightCommand command = FlightCommand::takeoff;
  CommandResult result;
  SensorReadings sensors;  // at capture time
};

struct FlightRecord {
  std::uint32_t flight_id = 0;
  Scene scene;
  std::vector<FlightStep> steps;
  FlightOutcome outcome = FlightOutcome::did_not_land;
  Pose final_pose;
  bool landed = false;
  bool crashed = false;
  double start_distance = 0.0;  // horizontal, drone to platform center
  double final_distance = 0.0;
  std::uint32_t commands_executed = 0;  // commands that moved the drone
  std::uint32_t invalid_commands = 0;

  std::size_t commands_issued() const { return steps.size(); }
};

/// Crash beats everything; a landing counts as on the platform within 30 cm
/// of its center, measured horizontally.
inline FlightOutcome classify_outcome(bool crashed, bool landed, double final_distance) {
  if (crashed) return FlightOutcome::crashed;
  if (!landed) return FlightOutcome::did_not_land;
  return final_distance <= kOnPlatformRadius ? FlightOutcome::landed_on_platform
                                             : FlightOutcome::landed_outside;
}

inline FlightOutcome classify_outcome(const FlightRecord& r, const LandingPlatform& platform) {
  return classify_outcome(r.crashed, r.landed,
                          horizontal_distance(r.final_pose.position, platform.center()));
}

struct FlightOptions {
  std::size_t max_commands = 100;
  CameraConfig camera;
  DroneConfig drone;
  std::uint8_t prev_k = 2;
  bool velocity = false;
  MotionProfileConfig motion;
  MotionObserver trajectory;  // velocity mode only
  std::function<void(const FlightStep&, const DroneState&)> on_step;
};

/// Closed loop: capture, ask the policy, execute. Invalid commands leave the
/// state alone but still count toward max_commands and stay out of the
/// previous-command history. A crash or a landing ends the flight.
inline FlightRecord run_flight(const Scene& scene, Policy& policy, const FlightOptions& opts = {},
                               std::uint32_t flight_id = 0) {
  FlightRecord rec;
  rec.flight_id = flight_id;
  rec.scene = scene;
  DroneState state = start_state(scene, scene.drone_start, opts.drone);
  const Vec3 goal = scene.platform.center();
  rec.start_distance = horizontal_distance(state.pose.position, goal);

  policy.begin_flight({flight_id, &scene, state});
  std::vector<std::uint8_t> prev(opts.prev_k, kNoCommand);
  for (std::size_t step = 0; step < opts.max_commands; ++step) {
    const Image img = render(scene, opts.camera, state.pose);
    Observation obs;
    obs.flight_id = flight_id;
    obs.step = static_cast<std::uint32_t>(step);
    obs.image = &img;
    obs.sensors = read_sensors(state);
    obs.prev_cmds = prev;
    const FlightCommand cmd = policy.observe(obs);

    FlightStep fs;
    fs.image_digest = image_digest(img);
    fs.command = cmd;
    fs.sensors = obs.sensors;
    fs.result = opts.velocity
                    ? execute_velocity(state, scene, cmd, opts.motion, opts.trajectory, opts.drone)
                    : execute_simple(state, scene, cmd, opts.drone);
    rec.steps.push_back(fs);
    if (opts.on_step) opts.on_step(fs, state);

    if (fs.result.status == CommandStatus::invalid) {
      ++rec.invalid_commands;
      continue;
    }
    if (fs.result.status == CommandStatus::crashed) {
      rec.crashed = true;
      break;
    }
    detail::push_history(prev, static_cast<std::uint8_t>(code_of(cmd)));
    if (cmd == FlightCommand::land) {
      rec.landed = true;
      break;
    }
  }
  rec.commands_executed = state.commands_executed;
  rec.final_pose = state.pose;
  rec.final_distance = horizontal_distance(state.pose.position, goal);
  rec.outcome = classify_outcome(rec, scene.platform);
  policy.end_flight(to_string(rec.outcome));
  return rec;
}

struct EvalConfig {
  std::uint64_t seed = 0;
  EnvParams env;
  PlannerConfig planner;
  FlightOptions flight;
  unsigned workers = 1;
};

struct EvalRow {
  std::uint32_t flight_id = 0;
  FlightOutcome outcome = FlightOutcome::did_not_land;
  double start_distance = 0.0;
  double final_distance = 0.0;
  std::size_t nr_cuboids = 0;
  double total_cuboid_volume = 0.0;
  std::size_t path_len = 0;  // commands issued by the policy
  std::size_t bfs_len = 0;   // optimal path length for the scene
  std::uint32_t invalid_commands = 0;
};

struct EvalReport {
  std::array<std::size_t, 4> counts{};
  std::vector<EvalRow> rows;  // flight order
  std::optional<RegressionResult> regression;
  std::string regression_error;

  std::size_t flights() const { return rows.size(); }
  double share(FlightOutcome o) const {
    return rows.empty() ? 0.0
                        : static_cast<double>(counts[static_cast<std::size_t>(o)]) /
                              static_cast<double>(rows.size());
  }
};

/// Landed-on-platform flag regressed on obstacle count, obstacle volume and
/// start distance.
inline void fit_outcome_regression(EvalReport& report) {
  std::vector<std::vector<double>> x;
  std::vector<double> y;
  for (const EvalRow& r : report.rows) {
    x.push_back({static_cast<double>(r.nr_cuboids), r.total_cuboid_volume, r.start_distance});
    y.push_back(r.outcome == FlightOutcome::landed_on_platform ? 1.0 : 0.0);
  }
  try {
    report.regression = ols_fit(x, y);
  } catch (const Error& e) {
    report.regression.reset();
    report.regression_error = e.what();
  }
}

/// Flies `n_flights` fresh solvable scenarios keyed by (seed, flight index),
/// one policy instance per flight.
inline EvalReport evaluate(const PolicyFactory& make_policy, std::size_t n_flights,
                           const EvalConfig& cfg) {
  if (n_flights == 0) throw InvalidArgument("need at least one flight");
  EvalReport report;
  report.rows = parallel_map(n_flights, cfg.workers, [&](std::size_t i) {
    const auto id = static_cast<std::uint32_t>(i);
    const SolvableScenario sc = generate_solvable_scenario(cfg.seed, id, cfg.env, cfg.planner);
    auto policy = make_policy();
    const FlightRecord rec = run_flight(sc.scene, *policy, cfg.flight, id);
    EvalRow row;
    row.flight_id = id;
    row.outcome = rec.outcome;
    row.start_distance = rec.start_distance;
    row.final_distance = rec.final_distance;
    row.nr_cuboids = sc.scene.cuboids.size();
    row.total_cuboid_volume = sc.scene.total_cuboid_volume();
    row.path_len = rec.commands_issued();
    row.bfs_len = sc.plan.path.size();
    row.invalid_commands = rec.invalid_commands;
    return row;
  });
  for (const EvalRow& r : report.rows) ++report.counts[static_cast<std::size_t>(r.outcome)];
  fit_outcome_regression(report);
  return report;
}

inline nlohmann::json to_json(const EvalReport& r) {
  nlohmann::json shares = nlohmann::json::object(), counts = nlohmann::json::object();
  for (FlightOutcome o : kAllOutcomes) {
    shares[std::string(to_string(o))] = r.share(o);
    counts[std::string(to_string(o))] = r.counts[static_cast<std::size_t>(o)];
  }
  nlohmann::json rows = nlohmann::json::array();
  for (const EvalRow& row : r.rows) {
    rows.push_back({{"flight_id", row.flight_id},
                    {"outcome", to_string(row.outcome)},
                    {"start_distance", row.start_distance},
                    {"final_distance", row.final_distance},
                    {"nr_cuboids", row.nr_cuboids},
                    {"total_cuboid_volume", row.total_cuboid_volume},
                    {"path_len", row.path_len},
                    {"bfs_len", row.bfs_len},
                    {"length_ratio", row.bfs_len == 0 ? 0.0
                                                      : static_cast<double>(row.path_len) /
                                                            static_cast<double>(row.bfs_len)},
                    {"invalid_commands", row.invalid_commands}});
  }
  nlohmann::json regression = nullptr;
  if (r.regression) {
    regression = {{"terms", {"intercept", "nr_cuboids", "total_cuboid_volume", "start_distance"}},
                  {"betas", r.regression->betas},
                  {"r_squared", r.regression->r_squared}};
  }
  nlohmann::json j = {{"flights", r.flights()},
                      {"counts", counts},
                      {"shares", shares},
                      {"rows", rows},
                      {"regression", regression}};
  if (!r.regression) j["regression_error"] = r.regression_error;
  return j;
}

}  // namespace dronesim
