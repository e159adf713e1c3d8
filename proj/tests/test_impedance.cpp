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

#include <doctest.h>

#include <random>

#include "hexctl/impedance.hpp"
#include "hexctl/kinematics.hpp"
#include "hexctl/model.hpp"

using namespace hexctl;

namespace {

Vec3 random_q(const LegModel& leg, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Vec3 q;
  for (int j = 0; j < 3; ++j) {
    const Interval& lim = leg.joint_limits[j];
    q[j] = lim.lo + unit(rng) * lim.width();
  }
  return q;
}

}  // namespace

TEST_CASE("zero error and zero feed-forward give zero torque") {
  RobotModel m = default_model();
  const LegModel& leg = m.legs[0];
  Vec3 q(0.2, -0.6, 1.1);
  Vec3 qdot(0.3, -0.2, 0.5);
  TipCommand setpoint;
  setpoint.position = fk(leg, q);
  setpoint.velocity = jacobian(leg, q) * qdot;
  JointCommand cmd = impedance_torques(leg, m.envelope, q, qdot, setpoint,
                                       ImpedanceGains{}, Vec3::Zero());
  CHECK(cmd.torques.norm() < 1e-12);
  CHECK_FALSE(cmd.clamped[0]);
}

TEST_CASE("pure position error maps through the jacobian transpose") {
  RobotModel m = default_model();
  const LegModel& leg = m.legs[0];
  Vec3 q(0.0, -0.7, 1.2);
  ImpedanceGains gains;
  gains.kv = Vec3::Zero();
  const double delta = 0.01;
  TipCommand setpoint;
  setpoint.position = fk(leg, q) + Vec3(delta, 0, 0);
  JointCommand cmd = impedance_torques(leg, m.envelope, q, Vec3::Zero(),
                                       setpoint, gains, Vec3::Zero());
  Vec3 expected =
      jacobian(leg, q).transpose() * Vec3(gains.kp[0] * delta, 0, 0);
  CHECK((cmd.torques - expected).norm() < 1e-12);
}

TEST_CASE("matches an independently coded force-then-transpose pipeline") {
  RobotModel m = default_model();
  const LegModel& leg = m.legs[0];
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int k = 0; k < 2000; ++k) {
    Vec3 q = random_q(leg, rng);
    Vec3 qdot(unit(rng), unit(rng), unit(rng));
    ImpedanceGains gains;
    gains.kp = Vec3(1000 + 500 * unit(rng), 1500, 2000 + 500 * unit(rng));
    gains.kv = Vec3(40 + 20 * unit(rng), 50, 80 + 20 * unit(rng));
    TipCommand setpoint;
    setpoint.position = fk(leg, q) + 0.05 * Vec3(unit(rng), unit(rng), unit(rng));
    setpoint.velocity = 0.5 * Vec3(unit(rng), unit(rng), unit(rng));
    Vec3 tau_ff = 10.0 * Vec3(unit(rng), unit(rng), unit(rng));

    JointCommand cmd =
        impedance_torques(leg, m.envelope, q, qdot, setpoint, gains, tau_ff);

    // Oracle: elementwise spring-damper force, then J^T, then clamp.
    Mat3 J = jacobian(leg, q);
    Vec3 x = fk(leg, q);
    Vec3 v = J * qdot;
    Vec3 f;
    for (int a = 0; a < 3; ++a)
      f[a] = gains.kp[a] * (setpoint.position[a] - x[a]) +
             gains.kv[a] * (setpoint.velocity[a] - v[a]);
    Vec3 raw = J.transpose() * f + tau_ff;
    for (int j = 0; j < 3; ++j) {
      double lim = m.envelope.peak_torque[j];
      double expect = std::min(std::max(raw[j], -lim), lim);
      CHECK(cmd.torques[j] == doctest::Approx(expect).epsilon(1e-12));
      CHECK(cmd.clamped[j] == (std::abs(raw[j]) > lim));
    }
  }
}

TEST_CASE("clamping pins torques at the peak envelope") {
  RobotModel m = default_model();
  const LegModel& leg = m.legs[0];
  Vec3 q(0.0, -0.7, 1.2);
  ImpedanceGains gains;
  gains.kp = Vec3(1e6, 1e6, 1e6);  // force a clamp on every joint
  gains.kv = Vec3::Zero();
  TipCommand setpoint;
  setpoint.position = fk(leg, q) + Vec3(0.2, 0.2, 0.2);
  JointCommand cmd = impedance_torques(leg, m.envelope, q, Vec3::Zero(),
                                       setpoint, gains, Vec3::Zero());
  for (int j = 0; j < 3; ++j) {
    CHECK(cmd.clamped[j]);
    CHECK(std::abs(cmd.torques[j]) == m.envelope.peak_torque[j]);
  }
  CHECK(m.envelope.peak_torque == Vec3(80, 112, 80));
}

TEST_CASE("virtual spring force is passive") {
  RobotModel m = default_model();
  const LegModel& leg = m.legs[0];
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  ImpedanceGains gains;
  gains.kv = Vec3::Zero();
  for (int k = 0; k < 2000; ++k) {
    Vec3 q = random_q(leg, rng);
    Vec3 x = fk(leg, q);
    Vec3 error = 0.08 * Vec3(unit(rng), unit(rng), unit(rng));
    Vec3 force = gains.kp.cwiseProduct(error);
    CHECK(force.dot(error) >= 0.0);
    (void)x;
  }
}

TEST_CASE("output is linear in gains and feed-forward before clamping") {
  RobotModel m = default_model();
  RobotModel loose = m;
  loose.envelope.peak_torque = Vec3(1e9, 1e9, 1e9);  // keep clamps inactive
  const LegModel& leg = m.legs[0];
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int k = 0; k < 500; ++k) {
    Vec3 q = random_q(leg, rng);
    Vec3 qdot(unit(rng), unit(rng), unit(rng));
    TipCommand setpoint;
    setpoint.position = fk(leg, q) + 0.05 * Vec3(unit(rng), unit(rng), unit(rng));
    setpoint.velocity = 0.3 * Vec3(unit(rng), unit(rng), unit(rng));

    ImpedanceGains g;
    g.kp = Vec3(900, 1100, 1300);
    g.kv = Vec3(40, 50, 60);
    Vec3 ff = 5.0 * Vec3(unit(rng), unit(rng), unit(rng));

    const double s = 1.0 + unit(rng);
    ImpedanceGains gs;
    gs.kp = s * g.kp;
    gs.kv = s * g.kv;

    Vec3 tau = impedance_torques(leg, loose.envelope, q, qdot, setpoint, g,
                                 Vec3::Zero())
                   .torques;
    Vec3 tau_scaled = impedance_torques(leg, loose.envelope, q, qdot, setpoint,
                                        gs, Vec3::Zero())
                          .torques;
    CHECK((tau_scaled - s * tau).norm() < 1e-9 * std::max(1.0, tau.norm()));

    Vec3 with_ff =
        impedance_torques(leg, loose.envelope, q, qdot, setpoint, g, ff)
            .torques;
    CHECK((with_ff - (tau + ff)).norm() < 1e-12);
  }
}
