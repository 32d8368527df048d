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

#include <stdexcept>
#include <string>

namespace dronesim {

/// Base class for every recoverable error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Scenario generation could not place an object within its attempt budget.
class PlacementExhausted : public Error {
 public:
  using Error::Error;
};

/// A value violates a documented precondition (bad config, malformed scene).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class FormatError : public Error {
 public:
  enum class Kind { corrupt_header, truncated_body, version_mismatch, corrupt_body, io };

  FormatError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

class RankDeficient : public Error {
 public:
  using Error::Error;
};

/// Failure talking to an out-of-process policy. Never mapped to a flight outcome.
class PolicyError : public Error {
 public:
  enum class Kind { timeout, malformed_response, broken_connection, handshake };

  PolicyError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

}  // namespace dronesim
