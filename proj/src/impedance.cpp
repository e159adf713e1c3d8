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

#include "hexctl/impedance.hpp"

#include <cmath>

#include "hexctl/errors.hpp"
#include "hexctl/kinematics.hpp"

namespace hexctl {

ImpedanceGains gains_from_config(const ConfigMap& cfg) {
  ImpedanceGains g;
  auto kp = cfg.get_list("impedance.kp", {g.kp[0], g.kp[1], g.kp[2]});
  auto kv = cfg.get_list("impedance.kv", {g.kv[0], g.kv[1], g.kv[2]});
  for (int i = 0; i < 3; ++i) {
    if (kp[i] < 0.0 || kv[i] < 0.0)
      throw ValidationError("impedance gains must be >= 0");
    g.kp[i] = kp[i];
    g.kv[i] = kv[i];
  }
  return g;
}

JointCommand impedance_torques(const LegModel& leg,
                               const JointEnvelope& envelope, const Vec3& q,
                               const Vec3& qdot, const TipCommand& setpoint,
                               const ImpedanceGains& gains,
                               const Vec3& tau_ff) {
  const Mat3 J = jacobian(leg, q);
  const Vec3 x = fk(leg, q);
  const Vec3 v = J * qdot;
  const Vec3 force = gains.kp.cwiseProduct(setpoint.position - x) +
                     gains.kv.cwiseProduct(setpoint.velocity - v);
  const Vec3 raw = J.transpose() * force + tau_ff;

  JointCommand cmd;
  for (int j = 0; j < 3; ++j) {
    const double limit = envelope.peak_torque[j];
    if (raw[j] > limit) {
      cmd.torques[j] = limit;
      cmd.clamped[j] = true;
    } else if (raw[j] < -limit) {
      cmd.torques[j] = -limit;
      cmd.clamped[j] = true;
    } else {
      cmd.torques[j] = raw[j];
    }
  }
  return cmd;
}

}  // namespace hexctl
