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

#include <vector>

#include "hexctl/model.hpp"
#include "hexctl/types.hpp"

namespace hexctl {

// Quasi-static distribution of a body wrench onto the stance feet. The
// balance matrix A (6 x 3n) stacks identities (force rows) over the
// cross-product matrices of the foot positions about the CoM (moment rows);
// the damped least-squares solution is x = A^T (A A^T + lambda^2 I)^-1 b.
struct StanceProblem {
  std::vector<Vec3> foot_positions;  // body frame, stance legs only
  Vec3 com = Vec3::Zero();           // simplified CoM, body frame
  Vec6 body_wrench = Vec6::Zero();   // (force N, moment N*m) about the CoM
  double damping_lambda = 0.0;
};

// Wrench that quasi-statically supports the robot's weight: (0,0,mg, 0,0,0).
Vec6 standing_wrench(double mass);

struct StanceSolution {
  std::vector<Vec3> forces;  // ground reaction on the robot, per stance foot
  double residual = 0.0;     // ||A x - b||
  bool used_svd_fallback = false;  // normal matrix was singular at lambda = 0
};

// Throws ValidationError when the problem has no stance feet or a negative
// damping term.
StanceSolution solve_stance_forces(const StanceProblem& problem);

// Recursive Newton-Euler over the 3-link chain with point-mass links at the
// model's COM offsets, expressed in the leg-base frame. gravity is the field
// vector, e.g. (0, 0, -9.81). With qdot = qddot = 0 this is the pure gravity
// torque.
Vec3 inverse_dynamics(const LegModel& leg, const Vec3& q, const Vec3& qdot,
                      const Vec3& qddot, const Vec3& gravity);

// Feed-forward torques realizing a desired ground reaction at the tip:
// tau = J^T(q) * (-contact_force). The leg pushes against the ground with
// the opposite of the support force it is meant to receive.
Vec3 feedforward_torques(const LegModel& leg, const Vec3& q,
                         const Vec3& contact_force);

}  // namespace hexctl
