// Copyright 2026 hexctl contributors
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

namespace hexctl {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Config text failed to parse. Carries the 1-based line number when known.
struct ConfigError : Error {
  ConfigError(const std::string& msg, int line = 0)
      : Error(line > 0 ? "config line " + std::to_string(line) + ": " + msg
                       : "config: " + msg),
        line(line) {}
  int line;
};

// A structural invariant was violated; the message names the field.
struct ValidationError : Error {
  using Error::Error;
};

// Requested stride does not fit the fore-aft tip workspace.
struct WorkspaceError : Error {
  using Error::Error;
};

// Tip position outside the reachable annulus. `distance` is how far the
// target is from the closest reachable point.
struct ReachabilityError : Error {
  ReachabilityError(const std::string& msg, double distance)
      : Error(msg), distance(distance) {}
  double distance;
};

// Reachable tip position whose joint solution violates a limit.
struct JointLimitError : Error {
  JointLimitError(const std::string& msg, int joint)
      : Error(msg), joint(joint) {}
  int joint;
};

// Jacobian too close to singular for a velocity solve.
struct SingularityError : Error {
  using Error::Error;
};

// The C2 junction system could not be assembled (degenerate durations).
struct ConstructionError : Error {
  using Error::Error;
};

// Simulation state left the sanity envelope.
struct DivergenceError : Error {
  using Error::Error;
};

// Episode log file does not match the documented schema.
struct LogFormatError : Error {
  LogFormatError(const std::string& msg, long row = 0)
      : Error(row > 0 ? "log row " + std::to_string(row) + ": " + msg
                      : "log: " + msg),
        row(row) {}
  long row;
};

}  // namespace hexctl
