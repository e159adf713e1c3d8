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

#include "hexctl/config.hpp"
#include "hexctl/model.hpp"
#include "hexctl/trajectory.hpp"
#include "hexctl/types.hpp"

namespace hexctl {

// Diagonal task-frame gains, acting in the leg-base frame. Defaults are
// simulator-tuned values for stable walking with stiffness kept low:
// gravity support comes through the feed-forward torques, not these
// springs. The damping carries the whole burden of dissipating body
// oscillation (the plant's contact model adds none), so it sits near
// critical damping of the lateral body mode.
struct ImpedanceGains {
  Vec3 kp = {1500.0, 1500.0, 2000.0};  // N/m
  Vec3 kv = {200.0, 200.0, 250.0};     // N*s/m
};

ImpedanceGains gains_from_config(const ConfigMap& cfg);

struct JointCommand {
  Vec3 torques = Vec3::Zero();  // N*m, after clamping
  std::array<bool, 3> clamped = {false, false, false};
};

// Task-frame impedance: x = fk(q), v = J(q) qdot,
// F = Kp (X - x) + Kv (Xdot - v), tau = J^T F + tau_ff, then clamped
// elementwise to +-peak_torque with per-joint flags. Clamping is a flagged
// outcome, not an error. No gravity term lives here.
JointCommand impedance_torques(const LegModel& leg,
                               const JointEnvelope& envelope, const Vec3& q,
                               const Vec3& qdot, const TipCommand& setpoint,
                               const ImpedanceGains& gains, const Vec3& tau_ff);

}  // namespace hexctl
