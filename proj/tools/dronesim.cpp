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

// dronesim command line: dataset generation, planning, flights, evaluation,
// rendering and dataset statistics.

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dronesim.hpp"

namespace ds = dronesim;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_numbers(const std::string& text, std::size_t count, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(std::string("bad number '") + item + "' in " + what);
    }
  }
  if (out.size() != count) {
    throw UsageError(std::string(what) + " needs " + std::to_string(count) + " comma-separated values");
  }
  return out;
}

std::pair<int, int> parse_size(const std::string& text) {
  const auto x = text.find('x');
  if (x == std::string::npos) throw UsageError("--size must look like 160x120");
  try {
    return {std::stoi(text.substr(0, x)), std::stoi(text.substr(x + 1))};
  } catch (const std::exception&) {
    throw UsageError("--size must look like 160x120");
  }
}

std::vector<ds::FlightCommand> parse_script(const std::string& text) {
  std::vector<ds::FlightCommand> out;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    auto cmd = ds::command_from_string(token);
    if (!cmd) throw UsageError("unknown command '" + token + "' in script");
    out.push_back(*cmd);
  }
  if (out.empty()) throw UsageError("empty script");
  return out;
}

/// Option values that fail library validation are usage errors.
template <typename F>
auto as_usage(F&& f) {
  try {
    return f();
  } catch (const ds::InvalidArgument& e) {
    throw UsageError(e.what());
  }
}

unsigned default_workers() { return std::max(1u, std::thread::hardware_concurrency()); }

// Option groups shared by several subcommands.

struct EnvOptions {
  std::string room = "3.3,3.3,2.5";
  int max_obstacles = 10;
  double max_edge = 2.0;

  void add(CLI::App* app) {
    app->add_option("--room", room, "room width,depth,height in meters")->capture_default_str();
    app->add_option("--max-obstacles", max_obstacles, "obstacles per scene, drawn uniformly from 0..N")
        ->capture_default_str();
    app->add_option("--max-edge", max_edge, "largest obstacle edge length in meters")
        ->capture_default_str();
  }

  ds::EnvParams get() const {
    return as_usage([&] {
      ds::EnvParams env;
      const auto r = parse_numbers(room, 3, "--room");
      env.room = {r[0], r[1], r[2]};
      env.max_obstacles = max_obstacles;
      env.max_edge = max_edge;
      env.validate();
      return env;
    });
  }
};

struct PlannerOptions {
  double cube_edge = ds::PlannerConfig{}.cube_edge;
  double yaw_step = 10.0;
  double break_radius = 0.10;
  double takeoff_altitude = 0.50;
  std::size_t max_iterations = ds::PlannerConfig{}.max_iterations;

  void add(CLI::App* app) {
    app->add_option("--cube-edge", cube_edge, "planner cube edge in meters")->capture_default_str();
    app->add_option("--yaw-step", yaw_step, "planner yaw bucket in degrees")->capture_default_str();
    app->add_option("--break-radius", break_radius, "goal radius around the platform center, meters")
        ->capture_default_str();
    app->add_option("--takeoff-altitude", takeoff_altitude, "takeoff climb in meters")
        ->capture_default_str();
    app->add_option("--max-iterations", max_iterations, "planner safety cap")->capture_default_str();
  }

  ds::PlannerConfig get() const {
    return as_usage([&] {
      ds::PlannerConfig p;
      p.cube_edge = cube_edge;
      p.yaw_step_deg = yaw_step;
      p.break_radius = break_radius;
      p.max_iterations = max_iterations;
      p.drone.takeoff_altitude = takeoff_altitude;
      p.validate();
      return p;
    });
  }
};

struct CameraOptions {
  std::string mode = "fisheye";
  std::string size = "160x120";

  void add(CLI::App* app) {
    app->add_option("--camera", mode, "camera set-up")
        ->check(CLI::IsMember({"fisheye", "front", "diagonal", "bottom", "split"}))
        ->capture_default_str();
    app->add_option("--size", size, "image size WxH, 4:3")->capture_default_str();
  }

  ds::CameraConfig get() const {
    return as_usage([&] {
      ds::CameraConfig c;
      c.mode = *ds::camera_mode_from_string(mode);
      std::tie(c.width, c.height) = parse_size(size);
      c.intrinsics();  // validates the aspect ratio
      return c;
    });
  }
};

struct MotionOptions {
  bool velocity = false;
  double v_max = 0.5, accel = 1.0, omega_deg = 90.0, alpha_deg = 180.0, dt = 1.0 / 240.0;

  void add(CLI::App* app) {
    app->add_flag("--velocity", velocity, "fly with velocity profiles instead of teleporting");
    app->add_option("--v-max", v_max, "m/s")->capture_default_str();
    app->add_option("--accel", accel, "m/s^2")->capture_default_str();
    app->add_option("--omega-max", omega_deg, "deg/s")->capture_default_str();
    app->add_option("--alpha", alpha_deg, "deg/s^2")->capture_default_str();
    app->add_option("--dt", dt, "simulation step in seconds")->capture_default_str();
  }

  ds::MotionProfileConfig get() const {
    return as_usage([&] {
      ds::MotionProfileConfig m{v_max, accel, ds::deg_to_rad(omega_deg), ds::deg_to_rad(alpha_deg), dt};
      m.validate();
      return m;
    });
  }
};

struct PolicyOptions {
  std::string spec = "oracle";
  double timeout_s = 10.0;

  void add(CLI::App* app, bool required) {
    auto* opt = app->add_option(
        "--policy", spec,
        "oracle | script:<cmd,cmd,...> | external:exec:<program args> | external:tcp:<host>:<port>");
    if (required) opt->required();
    app->add_option("--policy-timeout", timeout_s, "seconds to wait for each external response")
        ->capture_default_str();
  }

  ds::PolicyFactory factory(const ds::PlannerConfig& planner, const ds::CameraConfig& camera,
                            int prev_k) const {
    if (spec == "oracle") {
      return [planner] { return std::make_unique<ds::OraclePolicy>(planner); };
    }
    if (spec.rfind("script:", 0) == 0) {
      auto script = parse_script(spec.substr(7));
      return [script] { return std::make_unique<ds::ScriptedPolicy>(script); };
    }
    if (spec.rfind("external:", 0) == 0) {
      const std::string channel = spec.substr(9);
      ds::ExternalPolicyConfig cfg;
      cfg.image_w = camera.width;
      cfg.image_h = camera.height;
      cfg.prev_k = prev_k;
      cfg.timeout = std::chrono::milliseconds(static_cast<long>(timeout_s * 1000.0));
      return [channel, cfg] {
        return std::make_unique<ds::ExternalPolicy>(ds::open_channel(channel), cfg);
      };
    }
    throw UsageError("unknown policy '" + spec + "'");
  }
};

ds::Pose parse_start(const std::string& text) {
  const auto v = parse_numbers(text, 3, "--start");
  return {{v[0], v[1], ds::kDroneHalfExtents.z}, ds::normalize_angle(ds::deg_to_rad(v[2]))};
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ds::FormatError(ds::FormatError::Kind::io, "cannot open " + path);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dronesim: micro-drone simulator, planner, dataset generator and flight harness.\n"
               "Lengths are meters; angles on the command line are degrees."};
  app.set_config("--config", "", "read options from a TOML/INI file; flags override it");
  app.require_subcommand(1);
  app.fallthrough();

  unsigned workers = default_workers();
  app.add_option("--workers", workers, "worker threads for gen-data and evaluate");

  // gen-data
  auto* gen = app.add_subcommand("gen-data", "generate a labeled TDS1 dataset");
  std::size_t gen_samples = 0;
  std::uint64_t gen_seed = 0;
  std::string gen_out, gen_mode = "sophisticated", gen_jsonl;
  int gen_prev_k = 2;
  EnvOptions gen_env;
  PlannerOptions gen_planner;
  CameraOptions gen_camera;
  gen->add_option("--samples", gen_samples, "number of samples")->required()->check(CLI::PositiveNumber);
  gen->add_option("--seed", gen_seed, "master seed")->required();
  gen->add_option("--out", gen_out, "output TDS1 file")->required();
  gen->add_option("--mode", gen_mode, "collection procedure")
      ->check(CLI::IsMember({"sophisticated", "naive"}))
      ->capture_default_str();
  gen->add_option("--prev-k", gen_prev_k, "previous commands stored per sample")
      ->check(CLI::Range(0, 255))
      ->capture_default_str();
  gen->add_option("--jsonl", gen_jsonl, "also write a JSONL export");
  gen_env.add(gen);
  gen_planner.add(gen);
  gen_camera.add(gen);

  // plan
  auto* plan = app.add_subcommand("plan", "print the optimal command list for a scene");
  std::string plan_scene, plan_start;
  PlannerOptions plan_planner;
  plan->add_option("--scene", plan_scene, "scene JSON file")->required();
  plan->add_option("--start", plan_start, "override the spawn: x,y,yaw (meters, degrees)");
  plan_planner.add(plan);

  // fly
  auto* fly = app.add_subcommand("fly", "fly one policy in a scene");
  std::string fly_scene, fly_trace, fly_trajectory;
  std::size_t fly_max = 100;
  PolicyOptions fly_policy;
  PlannerOptions fly_planner;
  CameraOptions fly_camera;
  MotionOptions fly_motion;
  int fly_prev_k = 2;
  fly->add_option("--scene", fly_scene, "scene JSON file")->required();
  fly->add_option("--max-commands", fly_max, "flight length limit")->capture_default_str();
  fly->add_option("--trace", fly_trace, "JSONL trace, one line per command");
  fly->add_option("--trajectory", fly_trajectory,
                  "velocity mode: per-step lines 't x y z yaw speed' (yaw in radians)");
  fly->add_option("--prev-k", fly_prev_k, "previous commands shown to the policy")->capture_default_str();
  fly_policy.add(fly, true);
  fly_planner.add(fly);
  fly_camera.add(fly);
  fly_motion.add(fly);

  // evaluate
  auto* eval = app.add_subcommand("evaluate", "fly a policy over many generated scenes");
  std::size_t eval_flights = 0, eval_max = 100;
  std::uint64_t eval_seed = 0;
  std::string eval_report;
  int eval_prev_k = 2;
  PolicyOptions eval_policy;
  EnvOptions eval_env;
  PlannerOptions eval_planner;
  CameraOptions eval_camera;
  eval->add_option("--flights", eval_flights, "number of flights")->required()->check(CLI::PositiveNumber);
  eval->add_option("--seed", eval_seed, "master seed")->required();
  eval->add_option("--report", eval_report, "JSON report file (stdout if omitted)");
  eval->add_option("--max-commands", eval_max, "flight length limit")->capture_default_str();
  eval->add_option("--prev-k", eval_prev_k, "previous commands shown to the policy")->capture_default_str();
  eval_policy.add(eval, true);
  eval_env.add(eval);
  eval_planner.add(eval);
  eval_camera.add(eval);

  // render
  auto* rend = app.add_subcommand("render", "render one camera image");
  std::string rend_scene, rend_pose, rend_out, rend_depth;
  CameraOptions rend_camera;
  rend->add_option("--scene", rend_scene, "scene JSON file")->required();
  rend->add_option("--pose", rend_pose, "drone body center and heading: x,y,z,yaw (meters, degrees)")
      ->required();
  rend->add_option("--out", rend_out, "output PGM file")->required();
  rend->add_option("--depth", rend_depth, "optional DPT1 depth file");
  rend_camera.add(rend);

  // stats
  auto* stats = app.add_subcommand("stats", "print the label histogram of a dataset");
  std::string stats_path;
  stats->add_option("--dataset", stats_path, "TDS1 file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen) {
      ds::DatagenConfig cfg;
      cfg.seed = gen_seed;
      cfg.env = gen_env.get();
      cfg.planner = gen_planner.get();
      cfg.camera = gen_camera.get();
      cfg.prev_k = static_cast<std::uint8_t>(gen_prev_k);
      cfg.workers = workers;
      const ds::Dataset data = gen_mode == "naive" ? ds::generate_dataset_naive(gen_samples, cfg)
                                                   : ds::generate_dataset(gen_samples, cfg);
      ds::write_dataset(data, gen_out);
      if (!gen_jsonl.empty()) {
        auto out = open_out(gen_jsonl);
        ds::write_jsonl(data, out);
      }
      std::cout << "wrote " << data.samples.size() << " samples from " << data.flight_count
                << " flights to " << gen_out << '\n';
    } else if (*plan) {
      ds::Scene scene = ds::load_scene(plan_scene);
      if (!plan_start.empty()) {
        scene.drone_start = parse_start(plan_start);
        ds::validate_scene(scene);
      }
      const ds::PlannerConfig cfg = plan_planner.get();
      const ds::PlanResult r = ds::optimal_flight_path(scene, cfg);
      for (auto cmd : r.path) std::cout << ds::to_string(cmd) << '\n';
      std::cout << "found=" << (r.found ? "true" : "false") << " len=" << r.path.size()
                << " visited=" << r.visited << " iterations=" << r.iterations
                << " bound=" << ds::iteration_bound(scene.room, cfg) << '\n';
      if (r.status == ds::PlanStatus::iteration_cap) {
        std::cerr << "planner stopped at the iteration cap\n";
        return kExitRuntime;
      }
    } else if (*fly) {
      const ds::Scene scene = ds::load_scene(fly_scene);
      const ds::PlannerConfig planner = fly_planner.get();
      ds::FlightOptions opts;
      opts.max_commands = fly_max;
      opts.camera = fly_camera.get();
      opts.drone = planner.drone;
      opts.prev_k = static_cast<std::uint8_t>(fly_prev_k);
      opts.velocity = fly_motion.velocity;
      opts.motion = fly_motion.get();
      std::ofstream trajectory;
      double t0 = 0.0, last = 0.0;
      if (!fly_trajectory.empty()) {
        if (!opts.velocity) throw UsageError("--trajectory needs --velocity");
        trajectory = open_out(fly_trajectory);
        trajectory << std::setprecision(9);
        opts.trajectory = [&](double t, const ds::Pose& p, double speed) {
          if (t < last) t0 += last;  // each command restarts its clock
          last = t;
          trajectory << t0 + t << ' ' << p.position.x << ' ' << p.position.y << ' ' << p.position.z
                     << ' ' << p.yaw << ' ' << speed << '\n';
        };
      }
      std::ofstream trace;
      std::uint32_t step = 0;
      if (!fly_trace.empty()) {
        trace = open_out(fly_trace);
        opts.on_step = [&](const ds::FlightStep& s, const ds::DroneState& st) {
          const char* status = s.result.status == ds::CommandStatus::moved     ? "moved"
                               : s.result.status == ds::CommandStatus::crashed ? "crashed"
                                                                               : "invalid";
          nlohmann::json line = {{"step", step++},
                                 {"command", ds::to_string(s.command)},
                                 {"status", status},
                                 {"x", st.pose.position.x},
                                 {"y", st.pose.position.y},
                                 {"z", st.pose.position.z},
                                 {"yaw", st.pose.yaw},
                                 {"airborne", st.airborne},
                                 {"height_m", s.sensors.height_m},
                                 {"tof_m", s.sensors.tof_m},
                                 {"cmd_count", s.sensors.cmd_count},
                                 {"image_digest", s.image_digest}};
          trace << line.dump() << '\n';
        };
      }
      auto policy = fly_policy.factory(planner, opts.camera, fly_prev_k)();
      const ds::FlightRecord rec = ds::run_flight(scene, *policy, opts);
      std::cout << "outcome=" << ds::to_string(rec.outcome) << " commands=" << rec.commands_issued()
                << " invalid=" << rec.invalid_commands << std::setprecision(4)
                << " start_distance=" << rec.start_distance
                << " final_distance=" << rec.final_distance << '\n';
    } else if (*eval) {
      ds::EvalConfig cfg;
      cfg.seed = eval_seed;
      cfg.env = eval_env.get();
      cfg.planner = eval_planner.get();
      cfg.flight.max_commands = eval_max;
      cfg.flight.camera = eval_camera.get();
      cfg.flight.drone = cfg.planner.drone;
      cfg.flight.prev_k = static_cast<std::uint8_t>(eval_prev_k);
      cfg.workers = workers;
      const auto factory = eval_policy.factory(cfg.planner, cfg.flight.camera, eval_prev_k);
      const ds::EvalReport report = ds::evaluate(factory, eval_flights, cfg);
      const std::string text = ds::to_json(report).dump(2);
      if (eval_report.empty()) {
        std::cout << text << '\n';
      } else {
        open_out(eval_report) << text << '\n';
        for (auto o : ds::kAllOutcomes) {
          std::cout << ds::to_string(o) << ' ' << report.counts[static_cast<std::size_t>(o)] << ' '
                    << std::fixed << std::setprecision(4) << report.share(o) << '\n';
        }
      }
    } else if (*rend) {
      const ds::Scene scene = ds::load_scene(rend_scene);
      const auto v = parse_numbers(rend_pose, 4, "--pose");
      const ds::Pose pose{{v[0], v[1], v[2]}, ds::normalize_angle(ds::deg_to_rad(v[3]))};
      const ds::Image img = ds::render(scene, rend_camera.get(), pose);
      ds::write_bytes(rend_out, ds::encode_pgm(img));
      if (!rend_depth.empty()) ds::write_bytes(rend_depth, ds::encode_depth(img));
    } else if (*stats) {
      const ds::Dataset data = ds::read_dataset(stats_path);
      const ds::LabelHistogram h = ds::label_histogram(data);
      for (std::size_t i = 0; i < ds::kCommandCount; ++i) {
        std::cout << ds::to_string(static_cast<ds::FlightCommand>(i)) << ' ' << h.counts[i] << ' '
                  << std::fixed << std::setprecision(4) << h.share(i) << '\n';
      }
      std::cout << "samples " << h.total() << " flights " << h.flights << '\n';
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}
