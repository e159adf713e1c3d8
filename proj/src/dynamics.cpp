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

#include "hexctl/dynamics.hpp"

#include <cmath>

#include <Eigen/Cholesky>
#include <Eigen/SVD>

#include "hexctl/errors.hpp"
#include "hexctl/kinematics.hpp"

namespace hexctl {
namespace {

Mat3 skew(const Vec3& v) {
  Mat3 m;
  m << 0.0, -v.z(), v.y(),
       v.z(), 0.0, -v.x(),
      -v.y(), v.x(), 0.0;
  return m;
}

}  // namespace

Vec6 standing_wrench(double mass) {
  Vec6 w = Vec6::Zero();
  w(2) = mass * kGravity;
  return w;
}

StanceSolution solve_stance_forces(const StanceProblem& problem) {
  const int n = static_cast<int>(problem.foot_positions.size());
  if (n == 0) throw ValidationError("stance problem has no stance feet");
  if (problem.damping_lambda < 0.0)
    throw ValidationError("damping_lambda must be >= 0");

  Eigen::MatrixXd A(6, 3 * n);
  for (int i = 0; i < n; ++i) {
    A.block<3, 3>(0, 3 * i) = Mat3::Identity();
    A.block<3, 3>(3, 3 * i) = skew(problem.foot_positions[i] - problem.com);
  }
  const Vec6& b = problem.body_wrench;
  const double lambda2 =
      problem.damping_lambda * problem.damping_lambda;

  Eigen::Matrix<double, 6, 6> normal =
      A * A.transpose() + lambda2 * Eigen::Matrix<double, 6, 6>::Identity();
  Eigen::LDLT<Eigen::Matrix<double, 6, 6>> ldlt(normal);
  Eigen::VectorXd x;
  bool fallback = false;
  if (ldlt.info() == Eigen::Success) {
    Vec6 y = ldlt.solve(b);
    // LDLT "succeeds" on singular PSD matrices; verify the 6x6 solve.
    if ((normal * y - b).norm() <= 1e-8 * (1.0 + b.norm())) {
      x = A.transpose() * y;
    }
  }
  if (x.size() == 0) {
    // Singular normal matrix (rank-deficient stance at lambda = 0): fall
    // back to the SVD pseudo-inverse of A.
    fallback = true;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(
        A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(1e-10);
    x = svd.solve(b);
  }

  StanceSolution sol;
  sol.used_svd_fallback = fallback;
  sol.residual = (A * x - b).norm();
  sol.forces.resize(n);
  for (int i = 0; i < n; ++i) sol.forces[i] = x.segment<3>(3 * i);
  return sol;
}

Vec3 inverse_dynamics(const LegModel& leg, const Vec3& q, const Vec3& qdot,
                      const Vec3& qddot, const Vec3& gravity) {
  // Joint screws in the leg-base frame: coxa yaw about z, then femur and
  // knee about the yawed y axis. The knee angle enters the tibia direction
  // as q2 - q3, so the chain angles about those axes are (q1, -q2, +q3).
  const Vec3 theta_dot(qdot[0], -qdot[1], qdot[2]);
  const Vec3 theta_ddot(qddot[0], -qddot[1], qddot[2]);

  const Mat3 R1 = Eigen::AngleAxisd(q[0], Vec3::UnitZ()).toRotationMatrix();
  const Mat3 R2 =
      R1 * Eigen::AngleAxisd(-q[1], Vec3::UnitY()).toRotationMatrix();
  const Mat3 R3 =
      R1 * Eigen::AngleAxisd(-(q[1] - q[2]), Vec3::UnitY()).toRotationMatrix();
  const std::array<Mat3, 3> R = {R1, R2, R3};

  const Vec3 yawed_y = R1 * Vec3::UnitY();
  const std::array<Vec3, 3> axis = {Vec3::UnitZ(), yawed_y, yawed_y};

  // Joint origins and the tip, leg-base frame.
  std::array<Vec3, 4> origin;
  origin[0] = Vec3::Zero();
  origin[1] = R1 * Vec3(leg.l_coxa, 0, 0);
  origin[2] = origin[1] + R2 * Vec3(leg.l_femur, 0, 0);
  origin[3] = origin[2] + R3 * Vec3(leg.l_tibia, 0, 0);

  std::array<Vec3, 3> com;
  for (int i = 0; i < 3; ++i)
    com[i] = origin[i] + R[i] * Vec3(leg.link_com_offsets[i], 0, 0);

  // Outward pass: angular velocity/acceleration of each link and the linear
  // acceleration of each joint origin and COM.
  Vec3 omega = Vec3::Zero(), alpha = Vec3::Zero(), a_origin = Vec3::Zero();
  std::array<Vec3, 3> a_com;
  for (int i = 0; i < 3; ++i) {
    alpha = alpha + axis[i] * theta_ddot[i] +
            omega.cross(axis[i] * theta_dot[i]);
    omega = omega + axis[i] * theta_dot[i];
    const Vec3 rc = com[i] - origin[i];
    a_com[i] = a_origin + alpha.cross(rc) + omega.cross(omega.cross(rc));
    const Vec3 d = origin[i + 1] - origin[i];
    a_origin = a_origin + alpha.cross(d) + omega.cross(omega.cross(d));
  }

  // Inward pass: forces and moments about each joint origin; point-mass
  // links carry no rotational inertia of their own.
  Vec3 f = Vec3::Zero(), n = Vec3::Zero();
  Vec3 tau_theta;
  for (int i = 2; i >= 0; --i) {
    const Vec3 inertial = leg.link_masses[i] * (a_com[i] - gravity);
    n = n + (origin[i + 1] - origin[i]).cross(f) +
        (com[i] - origin[i]).cross(inertial);
    f = f + inertial;
    tau_theta[i] = axis[i].dot(n);
  }
  return Vec3(tau_theta[0], -tau_theta[1], tau_theta[2]);
}

Vec3 feedforward_torques(const LegModel& leg, const Vec3& q,
                         const Vec3& contact_force) {
  return jacobian(leg, q).transpose() * (-contact_force);
}

}  // namespace hexctl
