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

#include "hexctl/kinematics.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

#include "hexctl/errors.hpp"

namespace hexctl {

Vec3 fk(const LegModel& leg, const Vec3& q) {
  const double c2 = std::cos(q[1]), s2 = std::sin(q[1]);
  const double c23 = std::cos(q[1] - q[2]), s23 = std::sin(q[1] - q[2]);
  const double rho = leg.l_coxa + leg.l_femur * c2 + leg.l_tibia * c23;
  const double z = leg.l_femur * s2 + leg.l_tibia * s23;
  return Vec3(rho * std::cos(q[0]), rho * std::sin(q[0]), z);
}

Mat3 jacobian(const LegModel& leg, const Vec3& q) {
  const double c1 = std::cos(q[0]), s1 = std::sin(q[0]);
  const double c2 = std::cos(q[1]), s2 = std::sin(q[1]);
  const double c23 = std::cos(q[1] - q[2]), s23 = std::sin(q[1] - q[2]);
  const double rho = leg.l_coxa + leg.l_femur * c2 + leg.l_tibia * c23;
  const double drho_dq2 = -leg.l_femur * s2 - leg.l_tibia * s23;
  const double drho_dq3 = leg.l_tibia * s23;
  const double dz_dq2 = leg.l_femur * c2 + leg.l_tibia * c23;  // rho - l_coxa
  const double dz_dq3 = -leg.l_tibia * c23;
  Mat3 J;
  J << -rho * s1, c1 * drho_dq2, c1 * drho_dq3,
        rho * c1, s1 * drho_dq2, s1 * drho_dq3,
        0.0,      dz_dq2,        dz_dq3;
  return J;
}

namespace {

// Planar two-link closed form shared by ik and ik_nearest. d is the distance
// from the femur pivot to the target in the (radial, vertical) plane.
Vec3 ik_closed_form(const LegModel& leg, double q1, double r, double z) {
  const double d2 = r * r + z * z;
  // d^2 = l_f^2 + l_t^2 + 2 l_f l_t cos(q3); knee-flexed branch takes the
  // acos in [0, pi].
  double cos_q3 =
      (d2 - leg.l_femur * leg.l_femur - leg.l_tibia * leg.l_tibia) /
      (2.0 * leg.l_femur * leg.l_tibia);
  cos_q3 = std::clamp(cos_q3, -1.0, 1.0);
  const double q3 = std::acos(cos_q3);
  const double gamma = std::atan2(leg.l_tibia * std::sin(q3),
                                  leg.l_femur + leg.l_tibia * cos_q3);
  const double q2 = std::atan2(z, r) + gamma;
  return Vec3(q1, q2, q3);
}

}  // namespace

Vec3 ik(const LegModel& leg, const Vec3& tip) {
  const double q1 = std::atan2(tip.y(), tip.x());
  // Planar sub-problem in the (radial, vertical) plane at yaw q1.
  const double r = std::hypot(tip.x(), tip.y()) - leg.l_coxa;
  const double z = tip.z();
  const double d = std::hypot(r, z);
  const double reach_max = leg.l_femur + leg.l_tibia;
  const double reach_min = std::abs(leg.l_femur - leg.l_tibia);
  if (d > reach_max)
    throw ReachabilityError(
        "tip beyond reach by " + std::to_string(d - reach_max) + " m",
        d - reach_max);
  if (d < reach_min)
    throw ReachabilityError(
        "tip inside inner workspace boundary by " +
            std::to_string(reach_min - d) + " m",
        reach_min - d);

  const Vec3 q = ik_closed_form(leg, q1, r, z);
  for (int j = 0; j < 3; ++j) {
    if (!leg.joint_limits[j].contains(q[j]))
      throw JointLimitError(
          std::string("q") + std::to_string(j + 1) + " = " +
              std::to_string(q[j]) + " outside [" +
              std::to_string(leg.joint_limits[j].lo) + ", " +
              std::to_string(leg.joint_limits[j].hi) + "] (" +
              kJointNames[j] + ")",
          j);
  }
  return q;
}

double planar_radius(const LegModel& leg, const Vec3& q) {
  return leg.l_coxa + leg.l_femur * std::cos(q[1]) +
         leg.l_tibia * std::cos(q[1] - q[2]);
}

Vec3 ik_nearest(const LegModel& leg, const Vec3& tip) {
  const double q1 = std::atan2(tip.y(), tip.x());
  double r = std::hypot(tip.x(), tip.y()) - leg.l_coxa;
  double z = tip.z();
  const double d = std::hypot(r, z);
  const double reach_max = leg.l_femur + leg.l_tibia;
  const double reach_min = std::abs(leg.l_femur - leg.l_tibia);
  if (d > 0.0) {
    double scale = 1.0;
    if (d > reach_max)
      scale = (reach_max - 1e-9) / d;
    else if (d < reach_min)
      scale = (reach_min + 1e-9) / d;
    r *= scale;
    z *= scale;
  } else {
    r = reach_min + 1e-9;  // target at the femur pivot; pick the radial ray
  }
  return ik_closed_form(leg, q1, r, z);
}

double jacobian_min_singular_value(const LegModel& leg, const Vec3& q) {
  Eigen::JacobiSVD<Mat3> svd(jacobian(leg, q));
  return svd.singularValues()(2);
}

Vec3 ik_velocity(const LegModel& leg, const Vec3& q,
                 const Vec3& tip_velocity) {
  const Mat3 J = jacobian(leg, q);
  Eigen::JacobiSVD<Mat3> svd(J, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (svd.singularValues()(2) < kSingularityThreshold)
    throw SingularityError("jacobian near singular (sigma_min = " +
                           std::to_string(svd.singularValues()(2)) + ")");
  return svd.solve(tip_velocity);
}

}  // namespace hexctl
