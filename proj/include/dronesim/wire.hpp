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

// Line-delimited JSON policy protocol over a child process's stdio or TCP.
//
//   -> {"type":"hello","image_w":160,"image_h":120,"prev_k":2}
//   <- {"type":"ready"}
//   -> {"type":"obs","flight_id":n,"step":n,"image":{...},"sensors":{...},"prev_cmds":[..]}
//   <- {"type":"cmd","command":"forward"}
//   -> {"type":"done","outcome":"LandedOnPlatform"}

#include <netdb.h>
#include <poll.h>
#include <signal.h>
#include <sys/socket.h>
#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"

#include "dronesim/base64.hpp"
#include "dronesim/errors.hpp"
#include "dronesim/policy.hpp"

namespace dronesim {

/// Bidirectional newline-framed text channel over a connected socket.
class LineChannel {
 public:
  explicit LineChannel(int fd) : fd_(fd) {}
  LineChannel(const LineChannel&) = delete;
  LineChannel& operator=(const LineChannel&) = delete;
  virtual ~LineChannel() { close_fd(); }

  void send_line(const std::string& line) {
    std::string framed = line + '\n';
    std::size_t sent = 0;
    while (sent < framed.size()) {
      const ssize_t n = ::send(fd_, framed.data() + sent, framed.size() - sent, MSG_NOSIGNAL);
      if (n < 0 && errno == EINTR) continue;
      if (n <= 0) {
        throw PolicyError(PolicyError::Kind::broken_connection,
                          std::string("send failed: ") + std::strerror(errno));
      }
      sent += static_cast<std::size_t>(n);
    }
  }

  /// Next line without its terminator. Throws timeout when nothing complete
  /// arrives within `timeout`, broken_connection on EOF.
  std::string recv_line(std::chrono::milliseconds timeout) {
    const auto deadline = std::chrono::steady_clock::now() + timeout;
    for (;;) {
      if (auto pos = buffer_.find('\n'); pos != std::string::npos) {
        std::string line = buffer_.substr(0, pos);
        buffer_.erase(0, pos + 1);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return line;
      }
      const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
          deadline - std::chrono::steady_clock::now());
      if (left.count() <= 0) throw PolicyError(PolicyError::Kind::timeout, "no response in time");
      pollfd p{fd_, POLLIN, 0};
      const int ready = ::poll(&p, 1, static_cast<int>(left.count()));
      if (ready < 0 && errno == EINTR) continue;
      if (ready < 0) {
        throw PolicyError(PolicyError::Kind::broken_connection, std::strerror(errno));
      }
      if (ready == 0) continue;
      char chunk[65536];
      const ssize_t n = ::recv(fd_, chunk, sizeof chunk, 0);
      if (n < 0 && errno == EINTR) continue;
      if (n <= 0) throw PolicyError(PolicyError::Kind::broken_connection, "connection closed");
      buffer_.append(chunk, static_cast<std::size_t>(n));
    }
  }

 protected:
  void close_fd() {
    if (fd_ >= 0) ::close(fd_);
    fd_ = -1;
  }

 private:
  int fd_;
  std::string buffer_;
};

/// Runs `argv` with its stdin and stdout on one end of a socket pair.
class SubprocessChannel : public LineChannel {
 public:
  static std::unique_ptr<SubprocessChannel> spawn(const std::vector<std::string>& argv) {
    if (argv.empty()) throw InvalidArgument("empty policy command");
    int sv[2];
    if (::socketpair(AF_UNIX, SOCK_STREAM | SOCK_CLOEXEC, 0, sv) != 0) {
      throw PolicyError(PolicyError::Kind::broken_connection, "socketpair failed");
    }
    std::vector<char*> args;
    for (const auto& a : argv) args.push_back(const_cast<char*>(a.c_str()));
    args.push_back(nullptr);
    const pid_t pid = ::fork();
    if (pid < 0) {
      ::close(sv[0]);
      ::close(sv[1]);
      throw PolicyError(PolicyError::Kind::broken_connection, "fork failed");
    }
    if (pid == 0) {
      ::dup2(sv[1], STDIN_FILENO);
      ::dup2(sv[1], STDOUT_FILENO);
      ::execvp(args[0], args.data());
      ::_exit(127);
    }
    ::close(sv[1]);
    return std::unique_ptr<SubprocessChannel>(new SubprocessChannel(sv[0], pid));
  }

  ~SubprocessChannel() override {
    close_fd();
    // Give the child a moment to exit on EOF before forcing it.
    for (int i = 0; i < 100; ++i) {
      if (::waitpid(pid_, nullptr, WNOHANG) != 0) return;
      ::usleep(10'000);
    }
    ::kill(pid_, SIGKILL);
    ::waitpid(pid_, nullptr, 0);
  }

 private:
  SubprocessChannel(int fd, pid_t pid) : LineChannel(fd), pid_(pid) {}
  pid_t pid_;
};

inline std::unique_ptr<LineChannel> connect_tcp(const std::string& host, const std::string& port) {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* res = nullptr;
  if (::getaddrinfo(host.c_str(), port.c_str(), &hints, &res) != 0) {
    throw PolicyError(PolicyError::Kind::broken_connection, "cannot resolve " + host);
  }
  int fd = -1;
  for (addrinfo* a = res; a; a = a->ai_next) {
    fd = ::socket(a->ai_family, a->ai_socktype | SOCK_CLOEXEC, a->ai_protocol);
    if (fd < 0) continue;
    if (::connect(fd, a->ai_addr, a->ai_addrlen) == 0) break;
    ::close(fd);
    fd = -1;
  }
  ::freeaddrinfo(res);
  if (fd < 0) {
    throw PolicyError(PolicyError::Kind::broken_connection, "cannot connect to " + host + ":" + port);
  }
  return std::make_unique<LineChannel>(fd);
}

/// Opens a channel from a policy spec: `exec:<program> [args...]` (split on
/// spaces) or `tcp:<host>:<port>`.
inline std::unique_ptr<LineChannel> open_channel(const std::string& spec) {
  if (spec.rfind("exec:", 0) == 0) {
    std::vector<std::string> argv;
    std::string word;
    for (char c : spec.substr(5)) {
      if (c == ' ') {
        if (!word.empty()) argv.push_back(std::move(word));
        word.clear();
      } else {
        word += c;
      }
    }
    if (!word.empty()) argv.push_back(std::move(word));
    return SubprocessChannel::spawn(argv);
  }
  if (spec.rfind("tcp:", 0) == 0) {
    const std::string rest = spec.substr(4);
    const auto colon = rest.rfind(':');
    if (colon == std::string::npos) throw InvalidArgument("tcp policy spec needs host:port");
    return connect_tcp(rest.substr(0, colon), rest.substr(colon + 1));
  }
  throw InvalidArgument("policy spec must start with exec: or tcp:");
}

namespace wire {

inline nlohmann::json hello(int w, int h, int prev_k) {
  return {{"type", "hello"}, {"image_w", w}, {"image_h", h}, {"prev_k", prev_k}};
}

inline nlohmann::json observation(const Observation& obs) {
  nlohmann::json prev = nlohmann::json::array();
  for (auto c : obs.prev_cmds) prev.push_back(c);
  return {{"type", "obs"},
          {"flight_id", obs.flight_id},
          {"step", obs.step},
          {"image",
           {{"w", obs.image->width},
            {"h", obs.image->height},
            {"pixels_b64", base64::encode(obs.image->pixels)}}},
          {"sensors",
           {{"height_m", obs.sensors.height_m},
            {"tof_m", obs.sensors.tof_m},
            {"cmd_count", obs.sensors.cmd_count}}},
          {"prev_cmds", prev}};
}

inline nlohmann::json done(std::string_view outcome) {
  return {{"type", "done"}, {"outcome", outcome}};
}

/// Parses one response line and checks its "type".
inline nlohmann::json parse_message(const std::string& line, std::string_view expected_type,
                                    PolicyError::Kind error_kind) {
  nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw PolicyError(error_kind, "response is not a JSON object: " + line);
  }
  const auto type = j.find("type");
  if (type == j.end() || !type->is_string() || type->get<std::string>() != expected_type) {
    std::string detail = line;
    if (auto m = j.find("message"); m != j.end() && m->is_string()) detail = m->get<std::string>();
    throw PolicyError(error_kind, "expected '" + std::string(expected_type) + "', got: " + detail);
  }
  return j;
}

inline FlightCommand parse_command(const std::string& line) {
  const nlohmann::json j = parse_message(line, "cmd", PolicyError::Kind::malformed_response);
  const auto c = j.find("command");
  if (c == j.end() || !c->is_string()) {
    throw PolicyError(PolicyError::Kind::malformed_response, "missing command: " + line);
  }
  if (auto cmd = command_from_string(c->get<std::string>())) return *cmd;
  throw PolicyError(PolicyError::Kind::malformed_response,
                    "unknown command token '" + c->get<std::string>() + "'");
}

}  // namespace wire

struct ExternalPolicyConfig {
  int image_w = 160;
  int image_h = 120;
  int prev_k = 2;
  std::chrono::milliseconds timeout{10'000};
};

/// Policy living in another process. The handshake runs on construction.
class ExternalPolicy : public Policy {
 public:
  ExternalPolicy(std::unique_ptr<LineChannel> channel, ExternalPolicyConfig cfg)
      : channel_(std::move(channel)), cfg_(cfg) {
    channel_->send_line(wire::hello(cfg_.image_w, cfg_.image_h, cfg_.prev_k).dump());
    wire::parse_message(channel_->recv_line(cfg_.timeout), "ready", PolicyError::Kind::handshake);
  }

  FlightCommand observe(const Observation& obs) override {
    channel_->send_line(wire::observation(obs).dump());
    return wire::parse_command(channel_->recv_line(cfg_.timeout));
  }

  void end_flight(std::string_view outcome) override {
    channel_->send_line(wire::done(outcome).dump());
  }

 private:
  std::unique_ptr<LineChannel> channel_;
  ExternalPolicyConfig cfg_;
};

}  // namespace dronesim
