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

#include "hexctl/gait.hpp"

#include <cmath>

#include "hexctl/errors.hpp"

namespace hexctl {
namespace {

double wrap01(double x) {
  double w = x - std::floor(x);
  return w >= 1.0 ? 0.0 : w;  // floor roundoff can land exactly on 1.0
}

}  // namespace

GaitDefinition tripod_gait() {
  GaitDefinition g;
  g.name = "tripod";
  g.duty_factor = 0.5;
  g.phase_offsets = {0.0, 0.5, 0.5, 0.0, 0.0, 0.5};  // FL FR ML MR RL RR
  return g;
}

GaitDefinition amble_gait() {
  GaitDefinition g;
  g.name = "amble";
  g.duty_factor = 5.0 / 6.0;
  g.phase_offsets = {0.0,       3.0 / 6.0, 2.0 / 6.0,
                     5.0 / 6.0, 4.0 / 6.0, 1.0 / 6.0};
  return g;
}

GaitDefinition gait_by_name(const std::string& name) {
  if (name == "tripod") return tripod_gait();
  if (name == "amble") return amble_gait();
  throw ConfigError("unknown gait \"" + name + "\"");
}

GaitDefinition gait_from_config(const ConfigMap& cfg, const std::string& name) {
  std::string prefix = "gait." + name + ".";
  if (cfg.keys_with_prefix(prefix).empty()) return gait_by_name(name);
  GaitDefinition g;
  g.name = name;
  auto offsets = cfg.get_list(prefix + "offsets",
                              std::vector<double>(kNumLegs, 0.0));
  for (int i = 0; i < kNumLegs; ++i) g.phase_offsets[i] = offsets[i];
  g.duty_factor = cfg.get_double(prefix + "duty", 0.5);
  auto split = cfg.get_list(prefix + "swing_split",
                            {g.swing_split[0], g.swing_split[1], g.swing_split[2]});
  for (int i = 0; i < 3; ++i) g.swing_split[i] = split[i];
  validate(g);
  return g;
}

void validate(const GaitDefinition& gait) {
  if (!(gait.duty_factor > 0.0 && gait.duty_factor < 1.0))
    throw ValidationError("gait.duty: must be in (0, 1)");
  for (double off : gait.phase_offsets)
    if (!(off >= 0.0 && off < 1.0))
      throw ValidationError("gait.offsets: each offset must be in [0, 1)");
  double sum = 0.0;
  for (double s : gait.swing_split) {
    if (!(s > 0.0))
      throw ValidationError("gait.swing_split: shares must be > 0");
    sum += s;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw ValidationError("gait.swing_split: shares must sum to 1");
}

std::pair<LegMode, double> classify(double leg_phase,
                                    const GaitDefinition& gait) {
  const double beta = gait.duty_factor;
  if (leg_phase < beta) return {LegMode::kStance, leg_phase / beta};
  double s = (leg_phase - beta) / (1.0 - beta);  // swing-local fraction
  const double b0 = gait.swing_split[0];
  const double b1 = b0 + gait.swing_split[1];
  if (s < b0) return {LegMode::kLiftoff, s / b0};
  if (s < b1) return {LegMode::kMidswing, (s - b0) / gait.swing_split[1]};
  return {LegMode::kTouchdown, (s - b1) / gait.swing_split[2]};
}

GaitPhaseState make_phase_state(double global_phase,
                                const GaitDefinition& gait) {
  GaitPhaseState state;
  state.global_phase = wrap01(global_phase);
  for (int i = 0; i < kNumLegs; ++i) {
    LegPhase& leg = state.legs[i];
    leg.leg_phase = wrap01(state.global_phase + gait.phase_offsets[i]);
    auto [mode, progress] = classify(leg.leg_phase, gait);
    leg.mode = mode;
    leg.local_progress = progress;
  }
  return state;
}

GaitPhaseState advance(const GaitPhaseState& state, const GaitDefinition& gait,
                       double step_frequency, double dt) {
  if (!(dt > 0.0)) throw ValidationError("advance: dt must be > 0");
  if (!(step_frequency >= 0.0))
    throw ValidationError("advance: step_frequency must be >= 0");
  if (step_frequency == 0.0) return state;
  return make_phase_state(state.global_phase + step_frequency * dt, gait);
}

}  // namespace hexctl
