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

#include <array>
#include <string>

#include "hexctl/model.hpp"
#include "hexctl/sim.hpp"

namespace hexctl {

// Analysis quantities computed purely from an episode log: tip tracking
// error, body height deviation per gait cycle, velocity tracking, and
// torque envelope violations against the model's joint envelopes.
struct MetricsReport {
  long ticks = 0;
  double duration = 0.0;

  std::array<double, kNumLegs> tip_rms_error{};  // m
  std::array<double, kNumLegs> tip_max_error{};  // m

  // Peak-to-peak body height per gait cycle (cycles delimited by
  // global_phase wraps), averaged over complete cycles; the whole log counts
  // as one cycle when the phase never wraps.
  double height_p2p_mean = 0.0;  // m
  long height_cycles = 0;

  double forward_velocity_mean = 0.0;  // m/s, body-frame vx
  double forward_velocity_rms_error = 0.0;  // vs the commanded vx
  double lateral_velocity_rms = 0.0;   // m/s, body-frame vy

  // Samples exceeding the continuous / peak torque magnitude, per joint
  // class summed over legs.
  std::array<long, 3> continuous_violations{};
  std::array<long, 3> peak_violations{};

  double max_femur_torque = 0.0;  // N*m, |tau| over legs and samples
};

MetricsReport compute_metrics(const EpisodeLog& log, const RobotModel& model);

// key,value CSV. Byte-stable for identical inputs.
std::string metrics_csv(const MetricsReport& report);
std::string metrics_summary(const MetricsReport& report,
                            const EpisodeMeta& meta);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace hexctl
