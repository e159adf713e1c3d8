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

#include <cstdint>
#include <string>
#include <vector>

#include "hexctl/metrics.hpp"
#include "hexctl/model.hpp"
#include "hexctl/sim.hpp"

namespace hexctl {

struct ExperimentSpec {
  std::string name = "episode";
  std::string model_config_path;  // empty: built-in defaults
  std::string gait_name = "tripod";
  BodyVelocity velocity;
  double step_frequency = 1.0;  // Hz; 0 means standing
  double duration = 10.0;       // s
  std::string out_dir = ".";
  std::uint64_t seed = 0;  // recorded in outputs; the plant is deterministic
};

// Loads `experiment.*` keys from flat config text.
ExperimentSpec experiment_from_file(const std::string& path);

// Built-in presets: stand, tripod-0.3, tripod-0.5, amble-0.25, and the
// resonance-pair halves resonance-0.75 / resonance-1.0.
ExperimentSpec preset_experiment(const std::string& name);
std::vector<std::string> preset_names();

struct ExperimentResult {
  std::string log_path;
  std::string metrics_path;
  std::string summary_path;
  EpisodeMeta meta;
  MetricsReport report;
  bool diverged = false;
  std::string divergence_reason;
};

// Runs the episode deterministically and writes the log, metrics CSV and
// text summary under spec.out_dir.
ExperimentResult run_experiment(const ExperimentSpec& spec);

}  // namespace hexctl
