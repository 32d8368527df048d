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
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "dronesim/drone.hpp"
#include "dronesim/planner.hpp"
#include "dronesim/render.hpp"
#include "dronesim/scene.hpp"

namespace dronesim {

/// What a controller sees before each command.
struct Observation {
  std::uint32_t flight_id = 0;
  std::uint32_t step = 0;
  const Image* image = nullptr;
  SensorReadings sensors;
  std::vector<std::uint8_t> prev_cmds;  // most recent first, kNoCommand padded
};

/// Handed to a policy when a flight starts. Learned policies should only use
/// the flight id; the scene is there for the oracle.
struct FlightContext {
  std::uint32_t flight_id = 0;
  const Scene* scene = nullptr;
  DroneState start;
};

class Policy {
 public:
  virtual ~Policy() = default;
  virtual void begin_flight(const FlightContext&) {}
  virtual FlightCommand observe(const Observation& obs) = 0;
  virtual void end_flight(std::string_view /*outcome*/) {}
};

using PolicyFactory = std::function<std::unique_ptr<Policy>()>;

/// Replays the planner's optimal path for the flight's scene and start.
class OraclePolicy : public Policy {
 public:
  explicit OraclePolicy(PlannerConfig cfg = {}) : cfg_(std::move(cfg)) {}

  void begin_flight(const FlightContext& ctx) override {
    plan_ = optimal_flight_path(*ctx.scene, ctx.start, cfg_);
    next_ = 0;
  }

  FlightCommand observe(const Observation&) override {
    // An exhausted or missing plan can only mean the flight should end.
    if (next_ >= plan_.path.size()) return FlightCommand::land;
    return plan_.path[next_++];
  }

  const PlanResult& plan() const { return plan_; }

 private:
  PlannerConfig cfg_;
  PlanResult plan_;
  std::size_t next_ = 0;
};

/// Fixed command list; once exhausted the last command repeats.
class ScriptedPolicy : public Policy {
 public:
  explicit ScriptedPolicy(std::vector<FlightCommand> script) : script_(std::move(script)) {
    if (script_.empty()) throw InvalidArgument("scripted policy needs at least one command");
  }

  void begin_flight(const FlightContext&) override { next_ = 0; }

  FlightCommand observe(const Observation&) override {
    const FlightCommand c = script_[std::min(next_, script_.size() - 1)];
    ++next_;
    return c;
  }

 private:
  std::vector<FlightCommand> script_;
  std::size_t next_ = 0;
};

}  // namespace dronesim
