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

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "dronesim/dataset.hpp"
#include "dronesim/image_io.hpp"

namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun cli(const std::string& args) {
  const std::string cmd = std::string(DRONESIM_CLI) + " " + args + " 2>/dev/null";
  CliRun r;
  FILE* p = ::popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), p)) r.out.append(buf.data(), n);
  const int status = ::pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string scene(const char* name) { return std::string(DRONESIM_DATA_DIR) + "/scenes/" + name; }

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("dronesim_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& leaf) const { return (dir_ / leaf).string(); }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, PlanStraightLine) {
  const CliRun r = cli("plan --scene " + scene("empty_room.json"));
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find("found=")),
            "takeoff\nforward\nforward\nforward\nforward\nforward\nland\n");
  EXPECT_NE(r.out.find("found=true len=7"), std::string::npos);
}

TEST_F(CliTest, PlanWithStartOverride) {
  const CliRun r = cli("plan --scene " + scene("empty_room.json") + " --start 1.0,1.65,180");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("len=25"), std::string::npos) << r.out;
}

TEST_F(CliTest, GenDataAndStats) {
  const std::string out = path("d.tds1"), jsonl = path("d.jsonl");
  CliRun r = cli("gen-data --samples 40 --seed 3 --size 32x24 --camera front --out " + out + " --jsonl " + jsonl);
  ASSERT_EQ(r.code, 0);
  const auto ds = dronesim::read_dataset(out);
  EXPECT_EQ(ds.samples.size(), 40u);
  EXPECT_EQ(ds.width, 32);
  std::ifstream in(jsonl);
  EXPECT_EQ(dronesim::read_jsonl(in), ds);

  r = cli("stats --dataset " + out);
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("samples 40 flights " + std::to_string(ds.flight_count)), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("takeoff " + std::to_string(dronesim::label_histogram(ds).counts[0]) + " "),
            std::string::npos);
}

TEST_F(CliTest, GenDataIsWorkerInvariant) {
  const std::string a = path("a.tds1"), b = path("b.tds1");
  ASSERT_EQ(cli("--workers 1 gen-data --samples 60 --seed 11 --size 32x24 --out " + a).code, 0);
  ASSERT_EQ(cli("--workers 3 gen-data --samples 60 --seed 11 --size 32x24 --out " + b).code, 0);
  EXPECT_EQ(dronesim::read_file_bytes(a), dronesim::read_file_bytes(b));
}

TEST_F(CliTest, NaiveMode) {
  const std::string out = path("n.tds1");
  ASSERT_EQ(cli("gen-data --mode naive --samples 10 --seed 1 --size 32x24 --out " + out).code, 0);
  const auto ds = dronesim::read_dataset(out);
  EXPECT_EQ(ds.flight_count, 10u);
}

TEST_F(CliTest, FlyOracleWithTrace) {
  const std::string trace = path("t.jsonl");
  const CliRun r = cli("fly --scene " + scene("empty_room.json") + " --size 32x24 --policy oracle --trace " + trace);
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("outcome=LandedOnPlatform commands=7"), std::string::npos) << r.out;
  std::ifstream in(trace);
  int lines = 0;
  for (std::string line; std::getline(in, line);) {
    const auto j = nlohmann::json::parse(line);
    EXPECT_TRUE(j.contains("command"));
    ++lines;
  }
  EXPECT_EQ(lines, 7);
}

TEST_F(CliTest, FlyScriptedAndExternal) {
  CliRun r = cli("fly --scene " + scene("empty_room.json") + " --size 32x24 --policy script:takeoff,cw");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("outcome=DidNotLand commands=100"), std::string::npos) << r.out;

  r = cli("fly --scene " + scene("empty_room.json") + " --size 32x24 --policy 'external:exec:" +
          std::string(DRONESIM_MOCK_POLICY) + " happy takeoff,forward,forward,forward,forward,forward,land'");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("outcome=LandedOnPlatform"), std::string::npos) << r.out;
}

TEST_F(CliTest, ExternalFailureIsNotAnOutcome) {
  const CliRun r = cli("fly --scene " + scene("empty_room.json") + " --size 32x24 --policy 'external:exec:" +
                    std::string(DRONESIM_MOCK_POLICY) + " bad_token'");
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(r.out.find("outcome="), std::string::npos);
}

TEST_F(CliTest, FlyVelocityTrajectory) {
  const std::string traj = path("traj.csv");
  const CliRun r = cli("fly --scene " + scene("empty_room.json") + " --size 32x24 --policy oracle --velocity --trajectory " + traj);
  ASSERT_EQ(r.code, 0);
  EXPECT_GT(fs::file_size(traj), 1000u);
}

TEST_F(CliTest, EvaluateReport) {
  const std::string report = path("r.json");
  const CliRun r = cli("evaluate --flights 6 --seed 4 --size 32x24 --policy oracle --max-obstacles 0 --report " + report);
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("LandedOnPlatform 6 "), std::string::npos) << r.out;
  std::ifstream in(report);
  const auto j = nlohmann::json::parse(in);
  EXPECT_EQ(j["flights"], 6);
  EXPECT_EQ(j["counts"]["LandedOnPlatform"], 6);
}

TEST_F(CliTest, RenderImageAndDepth) {
  const std::string pgm = path("v.pgm"), dpt = path("v.dpt");
  const CliRun r = cli("render --scene " + scene("pocket.json") + " --pose 0.9,0.9,0.6,90 --camera front --out " +
                    pgm + " --depth " + dpt);
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(fs::file_size(pgm), 15u + 160u * 120u);
  const auto depth = dronesim::decode_depth(dronesim::read_file_bytes(dpt));
  EXPECT_EQ(depth.width, 160);
  EXPECT_EQ(depth.depth.size(), 160u * 120u);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(cli("").code, 1);
  EXPECT_EQ(cli("plan").code, 1);
  EXPECT_EQ(cli("gen-data --samples 0 --seed 1 --out " + path("x")).code, 1);
  EXPECT_EQ(cli("gen-data --samples 5 --seed 1 --size 100x100 --out " + path("x")).code, 1);
  EXPECT_EQ(cli("plan --scene " + scene("empty_room.json") + " --yaw-step 7").code, 1);
  EXPECT_EQ(cli("fly --scene " + scene("empty_room.json") + " --policy script:hover").code, 1);
  EXPECT_EQ(cli("render --scene /nonexistent.json --pose 1,1,1,0 --out " + path("x")).code, 2);
}

TEST_F(CliTest, ConfigFile) {
  const std::string cfg = path("cfg.toml"), out = path("c.tds1");
  std::ofstream(cfg) << "[gen-data]\nsamples = 12\nseed = 5\nsize = \"32x24\"\nout = \"" << out << "\"\n";
  const CliRun r = cli("--config " + cfg + " gen-data");
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(dronesim::read_dataset(out).samples.size(), 12u);
}
