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
#include <utility>

#include "hexctl/config.hpp"
#include "hexctl/types.hpp"

namespace hexctl {

// A leg's step cycle: stance on [0, duty), then swing split into liftoff,
// midswing and touchdown sub-windows. Windows are half-open; a phase exactly
// on a boundary belongs to the later mode.
enum class LegMode : int { kStance = 0, kLiftoff = 1, kMidswing = 2, kTouchdown = 3 };

inline constexpr std::array<const char*, 4> kLegModeNames = {
    "stance", "liftoff", "midswing", "touchdown"};

struct GaitDefinition {
  std::string name;
  std::array<double, kNumLegs> phase_offsets{};  // each in [0, 1)
  double duty_factor = 0.5;                      // in (0, 1)
  // Liftoff/midswing/touchdown shares of the swing window; sum to 1.
  std::array<double, 3> swing_split = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
};

// Tripod: {FL, MR, RL} at offset 0 and {FR, ML, RR} at offset 0.5, duty 0.5.
GaitDefinition tripod_gait();

// Amble: offsets spaced 1/6 apart (left side front-to-rear at 0, 1/3, 2/3;
// right side = left + 1/2), duty 5/6. A plausible reconstruction, not a
// canonical definition.
GaitDefinition amble_gait();

GaitDefinition gait_by_name(const std::string& name);
// Reads `gait.<name>.offsets|duty|swing_split`; falls back to the built-in
// definitions for "tripod" and "amble".
GaitDefinition gait_from_config(const ConfigMap& cfg, const std::string& name);

void validate(const GaitDefinition& gait);

struct LegPhase {
  double leg_phase = 0.0;
  LegMode mode = LegMode::kStance;
  double local_progress = 0.0;  // spans [0, 1] across the mode's window
};

struct GaitPhaseState {
  double global_phase = 0.0;  // in [0, 1)
  std::array<LegPhase, kNumLegs> legs{};
};

std::pair<LegMode, double> classify(double leg_phase,
                                    const GaitDefinition& gait);

GaitPhaseState make_phase_state(double global_phase,
                                const GaitDefinition& gait);

// Advances the global phase by step_frequency * dt (mod 1) and recomputes all
// per-leg fields. step_frequency = 0 is the identity.
GaitPhaseState advance(const GaitPhaseState& state, const GaitDefinition& gait,
                       double step_frequency, double dt);

}  // namespace hexctl
