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

#include "hexctl/model.hpp"
#include "hexctl/types.hpp"

namespace hexctl {

// Leg kinematics in the leg-base frame (x outward, z up, origin at the coxa
// pivot). Angle conventions:
//   q1  coxa yaw about z.
//   q2  femur pitch from horizontal, positive raising the knee.
//   q3  knee flexion; the tibia direction is at angle q2 - q3, so the
//       default limits [0.4, 2.4] keep the knee flexed downward.
// With planar radius rho = l_c + l_f*cos(q2) + l_t*cos(q2 - q3) and height
// z = l_f*sin(q2) + l_t*sin(q2 - q3), the tip sits at
// (rho*cos(q1), rho*sin(q1), z).

struct JointState {
  Vec3 q = Vec3::Zero();     // rad
  Vec3 qdot = Vec3::Zero();  // rad/s
};

Vec3 fk(const LegModel& leg, const Vec3& q);

// 3x3 Jacobian mapping joint rates to tip linear velocity (leg-base frame).
Mat3 jacobian(const LegModel& leg, const Vec3& q);

// Closed-form IK on the knee-flexed branch (q3 > 0). Throws
// ReachabilityError outside the reachable annulus (with the distance to the
// closest reachable point) and JointLimitError when the unique solution
// violates a limit.
Vec3 ik(const LegModel& leg, const Vec3& tip);

// Exact velocity solve J(q) * qdot = tip_velocity. Throws SingularityError
// when the smallest singular value of J drops below the threshold; damping
// near singularities is deliberately not done here.
Vec3 ik_velocity(const LegModel& leg, const Vec3& q, const Vec3& tip_velocity);

// Geometry-only IK for the plant: targets outside the reachable annulus are
// pulled radially onto its boundary and joint limits are ignored. Never
// throws.
Vec3 ik_nearest(const LegModel& leg, const Vec3& tip);

// Planar radius of the tip from the coxa axis. The closed-form IK convention
// q1 = atan2(y, x) covers the outward workspace rho > 0; inside the joint
// limits the leg can fold far enough for the tip to cross the coxa axis,
// and those configurations are unreachable for the IK by construction.
double planar_radius(const LegModel& leg, const Vec3& q);

inline constexpr double kSingularityThreshold = 1e-6;

// Smallest singular value of the Jacobian at q.
double jacobian_min_singular_value(const LegModel& leg, const Vec3& q);

}  // namespace hexctl
