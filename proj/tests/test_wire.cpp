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

#include <chrono>
#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "dronesim/harness.hpp"
#include "dronesim/scene_json.hpp"
#include "dronesim/wire.hpp"

using namespace dronesim;
using namespace std::chrono_literals;

namespace {

using C = FlightCommand;

std::string mock(const std::string& args) { return "exec:" + std::string(DRONESIM_MOCK_POLICY) + " " + args; }

ExternalPolicyConfig small_cfg(std::chrono::milliseconds timeout = 10s) {
  return {32, 24, 2, timeout};
}

FlightOptions small_flight() {
  FlightOptions o;
  o.camera = {CameraMode::front, 32, 24};
  return o;
}

Scene straight_scene() {
  return load_scene(std::string(DRONESIM_DATA_DIR) + "/scenes/empty_room.json");
}

PolicyError::Kind error_kind(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const PolicyError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no PolicyError raised";
  return PolicyError::Kind::handshake;
}

}  // namespace

TEST(WireFormat, ParseCommand) {
  EXPECT_EQ(wire::parse_command(R"({"type":"cmd","command":"forward"})"), C::forward);
  EXPECT_EQ(wire::parse_command(R"({"type":"cmd","command":"ccw","extra":1})"), C::ccw);
  for (const char* bad : {R"({"type":"cmd","command":"hover"})", R"({"type":"cmd"})",
                          R"({"type":"ready"})", "not json", "[1,2]", R"({"type":"cmd","command":3})"}) {
    EXPECT_EQ(error_kind([&] { wire::parse_command(bad); }), PolicyError::Kind::malformed_response) << bad;
  }
}

TEST(WireFormat, ObservationShape) {
  Image img(4, 3);
  img.pixels[0] = 9;
  Observation obs{7, 2, &img, {0.5, 0.6, 2}, {2, kNoCommand}};
  const auto j = wire::observation(obs);
  EXPECT_EQ(j["type"], "obs");
  EXPECT_EQ(j["flight_id"], 7);
  EXPECT_EQ(j["step"], 2);
  EXPECT_EQ(j["image"]["w"], 4);
  EXPECT_EQ(j["image"]["h"], 3);
  EXPECT_EQ(base64::decode(j["image"]["pixels_b64"].get<std::string>()), img.pixels);
  EXPECT_EQ(j["sensors"]["cmd_count"], 2);
  EXPECT_EQ(j["prev_cmds"], nlohmann::json::array({2, 255}));
  EXPECT_EQ(wire::hello(160, 120, 2).dump(), R"({"image_h":120,"image_w":160,"prev_k":2,"type":"hello"})");
  EXPECT_EQ(wire::done("Crashed")["outcome"], "Crashed");
}

TEST(WireChannel, HappyFlightThroughMock) {
  const auto log = (std::filesystem::temp_directory_path() / "dronesim_mock_log.txt").string();
  {
    ExternalPolicy p(open_channel(mock("happy takeoff,forward,forward,forward,forward,forward,land " + log)),
                     small_cfg());
    const FlightRecord r = run_flight(straight_scene(), p, small_flight());
    EXPECT_EQ(r.outcome, FlightOutcome::landed_on_platform);
    EXPECT_EQ(r.commands_issued(), 7u);
    // A second flight on the same connection restarts the script.
    const FlightRecord again = run_flight(straight_scene(), p, small_flight(), 1);
    EXPECT_EQ(again.outcome, FlightOutcome::landed_on_platform);
  }
  std::ifstream in(log);
  std::vector<std::string> types;
  for (std::string line; std::getline(in, line);) types.push_back(line);
  ASSERT_EQ(types.size(), 1u + 7u + 1u + 7u + 1u);
  EXPECT_EQ(types.front(), "hello");
  EXPECT_EQ(types[8], "done");
  EXPECT_EQ(types.back(), "done");
  std::filesystem::remove(log);
}

TEST(WireChannel, UnknownTokenIsMalformed) {
  ExternalPolicy p(open_channel(mock("bad_token")), small_cfg());
  EXPECT_EQ(error_kind([&] { run_flight(straight_scene(), p, small_flight()); }),
            PolicyError::Kind::malformed_response);
}

TEST(WireChannel, GarbageIsMalformed) {
  ExternalPolicy p(open_channel(mock("garbage")), small_cfg());
  EXPECT_EQ(error_kind([&] { run_flight(straight_scene(), p, small_flight()); }),
            PolicyError::Kind::malformed_response);
}

TEST(WireChannel, SilencePastTheDeadlineTimesOut) {
  ExternalPolicy p(open_channel(mock("silent")), small_cfg(300ms));
  const auto t0 = std::chrono::steady_clock::now();
  EXPECT_EQ(error_kind([&] { run_flight(straight_scene(), p, small_flight()); }),
            PolicyError::Kind::timeout);
  EXPECT_LT(std::chrono::steady_clock::now() - t0, 5s);
}

TEST(WireChannel, ExitAfterHandshakeBreaksTheConnection) {
  ExternalPolicy p(open_channel(mock("exit")), small_cfg());
  EXPECT_EQ(error_kind([&] { run_flight(straight_scene(), p, small_flight()); }),
            PolicyError::Kind::broken_connection);
}

TEST(WireChannel, RefusedHandshake) {
  std::string message;
  EXPECT_EQ(error_kind([&] {
              try {
                ExternalPolicy p(open_channel(mock("refuse")), small_cfg());
              } catch (const PolicyError& e) {
                message = e.what();
                throw;
              }
            }),
            PolicyError::Kind::handshake);
  EXPECT_NE(message.find("320x240"), std::string::npos);
}

TEST(WireChannel, WrongShapeIsRejectedByThePeer) {
  // The mock checks the hello dimensions against every observation.
  ExternalPolicy p(open_channel(mock("happy")), ExternalPolicyConfig{160, 120, 2, 10s});
  EXPECT_EQ(error_kind([&] { run_flight(straight_scene(), p, small_flight()); }),
            PolicyError::Kind::malformed_response);
}

TEST(WireChannel, MissingProgramBreaksTheConnection) {
  EXPECT_EQ(error_kind([&] { ExternalPolicy p(open_channel("exec:/nonexistent/policy"), small_cfg()); }),
            PolicyError::Kind::broken_connection);
}

TEST(WireChannel, BadSpecs) {
  EXPECT_THROW(open_channel("carrier-pigeon:home"), InvalidArgument);
  EXPECT_THROW(open_channel("tcp:nohostport"), InvalidArgument);
}

TEST(WireChannel, ErrorsAreNotOutcomes) {
  // An evaluation whose policy breaks surfaces the error instead of a share.
  EvalConfig cfg;
  cfg.flight = small_flight();
  const std::string spec = mock("bad_token");
  EXPECT_THROW(evaluate([&] { return std::make_unique<ExternalPolicy>(open_channel(spec), small_cfg()); }, 2, cfg),
               PolicyError);
}
