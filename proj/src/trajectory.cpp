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

#include "hexctl/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "hexctl/errors.hpp"

namespace hexctl {
namespace {

// Shape constants for the swing. The liftoff segment ends (and midswing
// begins) at kShoulderFraction of the way along the stride at
// kShoulderHeight of the clearance; midswing ends at the mirrored planar
// point. The remaining control points come out of the C2 junction solve.
constexpr double kShoulderFraction = 0.25;
constexpr double kShoulderHeight = 0.8;

Vec3 decasteljau(const std::array<Vec3, 5>& p, double u) {
  std::array<Vec3, 5> w = p;
  for (int level = 4; level >= 1; --level)
    for (int i = 0; i < level; ++i) w[i] = (1.0 - u) * w[i] + u * w[i + 1];
  return w[0];
}

// Scalar junction chain: given the liftoff exit (l2, l4 fixed, l3 unknown)
// the midswing points m0..m2 are pinned by C0/C1/C2 continuity, and m3 by
// the backward-continuity consistency with the touchdown segment. Everything
// is affine in the unknowns (l3 and, on the vertical axis, m4), so the chain
// is expressed in terms of affine coefficients.
struct Affine {
  double c = 0.0;   // constant
  double dl = 0.0;  // coefficient of l3
  double dm = 0.0;  // coefficient of m4
};

Affine operator+(Affine a, Affine b) {
  return {a.c + b.c, a.dl + b.dl, a.dm + b.dm};
}
Affine operator*(double s, Affine a) { return {s * a.c, s * a.dl, s * a.dm}; }

struct JunctionChain {
  // Midswing control points as affine expressions.
  std::array<Affine, 5> m;
  // S = sum of Bernstein(0.5)-weighted points * 16 (the curve midpoint
  // times 16) and D = the u = 0.5 derivative stencil.
  Affine S, D;
};

JunctionChain build_chain(double l2, double l4, double g_td, double r1,
                          double r2, bool m4_unknown, double m4_value) {
  JunctionChain ch;
  const Affine L2{l2, 0, 0};
  const Affine L3{0, 1, 0};
  const Affine L4{l4, 0, 0};
  const Affine M4 = m4_unknown ? Affine{0, 0, 1} : Affine{m4_value, 0, 0};

  ch.m[0] = L4;
  ch.m[1] = L4 + r1 * (L4 + (-1.0) * L3);
  ch.m[2] = ch.m[1] + ch.m[1] + (-1.0) * ch.m[0] +
            (r1 * r1) * (L4 + (-2.0) * L3 + L2);
  // Backward C1/C2 consistency into stance requires the touchdown segment's
  // P2 to equal g_td; solving the forward continuity expressions for m3:
  // m3 = [m4 (1+r2)^2 + r2^2 m2 - g_td] / (2 r2 (1 + r2)).
  const double denom = 2.0 * r2 * (1.0 + r2);
  ch.m[3] = (1.0 / denom) * ((1.0 + r2) * (1.0 + r2) * M4 +
                             (r2 * r2) * ch.m[2] + Affine{-g_td, 0, 0});
  ch.m[4] = M4;

  ch.S = ch.m[0] + 4.0 * ch.m[1] + 6.0 * ch.m[2] + 4.0 * ch.m[3] + ch.m[4];
  ch.D = (-1.0) * ch.m[0] + (-2.0) * ch.m[1] + 2.0 * ch.m[3] + ch.m[4];
  return ch;
}

double resolve(const Affine& a, double l3, double m4) {
  return a.c + a.dl * l3 + a.dm * m4;
}

}  // namespace

Vec3 BezierSegment::position(double u) const {
  return decasteljau(control_points, u);
}

Vec3 BezierSegment::velocity(double u) const {
  std::array<Vec3, 5> d;
  for (int i = 0; i < 4; ++i)
    d[i] = 4.0 * (control_points[i + 1] - control_points[i]);
  // Degree-3 de Casteljau on the hodograph.
  for (int level = 3; level >= 1; --level)
    for (int i = 0; i < level; ++i) d[i] = (1.0 - u) * d[i] + u * d[i + 1];
  return d[0] / duration;
}

Vec3 BezierSegment::acceleration(double u) const {
  std::array<Vec3, 3> dd;
  for (int i = 0; i < 3; ++i)
    dd[i] = 12.0 * (control_points[i + 2] - 2.0 * control_points[i + 1] +
                    control_points[i]);
  for (int level = 2; level >= 1; --level)
    for (int i = 0; i < level; ++i) dd[i] = (1.0 - u) * dd[i] + u * dd[i + 1];
  return dd[0] / (duration * duration);
}

LegTrajectory build_trajectory(const RobotModel& model, LegId leg_id,
                               const GaitDefinition& gait,
                               const BodyVelocity& body_velocity,
                               double step_frequency, double clearance) {
  if (!(step_frequency > 0.0))
    throw ValidationError("build_trajectory: step_frequency must be > 0");
  if (clearance < 0.0)
    throw ValidationError("build_trajectory: clearance must be >= 0");
  validate(gait);

  const Vec3 foothold = default_foothold(model, leg_id);
  // Body-frame velocity of the ground point under the foot; the turning
  // contribution linearizes the arc as a straight chord.
  const Vec3 foot_velocity(
      body_velocity.vx - body_velocity.wz * foothold.y(),
      body_velocity.vy + body_velocity.wz * foothold.x(), 0.0);
  const double beta = gait.duty_factor;
  const Vec3 stride = foot_velocity * (beta / step_frequency);

  if (stride.norm() > model.workspace_length + 1e-12)
    throw WorkspaceError(
        std::string(kLegNames[leg_index(leg_id)]) + ": stride " +
        std::to_string(stride.norm()) + " m exceeds workspace " +
        std::to_string(model.workspace_length) + " m");

  const Vec3 touchdown_point = foothold + 0.5 * stride;  // stance start
  const Vec3 liftoff_point = foothold - 0.5 * stride;    // stance end
  const double z_ground = foothold.z();

  const double t_stance = beta / step_frequency;
  const double t_swing = (1.0 - beta) / step_frequency;
  const double t1 = gait.swing_split[0] * t_swing;  // liftoff
  const double t2 = gait.swing_split[1] * t_swing;  // midswing
  const double t3 = gait.swing_split[2] * t_swing;  // touchdown
  const double r1 = t2 / t1;
  const double r2 = t3 / t2;

  LegTrajectory traj;
  traj.default_foothold = foothold;
  traj.stride_vector = stride;

  // Stance: collinear, uniformly spaced sweep from touchdown to liftoff.
  BezierSegment& stance = traj.segments[segment_index(LegMode::kStance)];
  stance.duration = t_stance;
  for (int i = 0; i < 5; ++i)
    stance.control_points[i] = touchdown_point - (i / 4.0) * stride;

  // Liftoff entry is pinned by C0/C1/C2 continuity with the stance exit
  // (velocity -foot_velocity, zero acceleration); the exit shoulder is a
  // shape choice.
  BezierSegment& liftoff = traj.segments[segment_index(LegMode::kLiftoff)];
  liftoff.duration = t1;
  const Vec3 l0 = liftoff_point;
  const Vec3 l1 = l0 - foot_velocity * (t1 / 4.0);
  const Vec3 l2 = 2.0 * l1 - l0;
  Vec3 l4 = liftoff_point + kShoulderFraction * stride;
  l4.z() = z_ground + kShoulderHeight * clearance;

  // Touchdown exit is pinned by backward continuity into the next stance:
  // P4 at the touchdown target with velocity -foot_velocity and zero
  // acceleration, which fixes the required P2 = g_td.
  const Vec3 td4 = touchdown_point;
  const Vec3 td3 = td4 + foot_velocity * (t3 / 4.0);
  const Vec3 g_td = 2.0 * td3 - td4;

  // Midswing's remaining freedom closes the system: per planar axis the
  // curve midpoint is centred over the foothold (one unknown, l3); on the
  // vertical axis the midpoint sits at the clearance with zero vertical
  // velocity (two unknowns, l3z and m4z).
  Vec3 l3, m4;
  for (int axis = 0; axis < 2; ++axis) {
    const double m4_planar = liftoff_point[axis] +
                             (1.0 - kShoulderFraction) * stride[axis];
    JunctionChain ch = build_chain(l2[axis], l4[axis], g_td[axis], r1, r2,
                                   false, m4_planar);
    if (std::abs(ch.S.dl) < 1e-12)
      throw ConstructionError("degenerate planar junction system");
    const double target = 16.0 * foothold[axis];
    l3[axis] = (target - ch.S.c) / ch.S.dl;
    m4[axis] = m4_planar;
  }
  {
    JunctionChain ch = build_chain(l2.z(), l4.z(), g_td.z(), r1, r2, true, 0.0);
    const double s_target = 16.0 * (z_ground + clearance);
    // 2x2 system in (l3z, m4z): S = s_target, D = 0.
    const double det = ch.S.dl * ch.D.dm - ch.S.dm * ch.D.dl;
    if (std::abs(det) < 1e-12)
      throw ConstructionError("degenerate vertical junction system");
    l3.z() = ((s_target - ch.S.c) * ch.D.dm - (-ch.D.c) * ch.S.dm) / det;
    m4.z() = (ch.S.dl * (-ch.D.c) - ch.D.dl * (s_target - ch.S.c)) / det;
  }

  liftoff.control_points = {l0, l1, l2, l3, l4};

  BezierSegment& midswing = traj.segments[segment_index(LegMode::kMidswing)];
  midswing.duration = t2;
  for (int axis = 0; axis < 3; ++axis) {
    const bool vertical = axis == 2;
    JunctionChain ch = build_chain(l2[axis], l4[axis], g_td[axis], r1, r2,
                                   vertical, vertical ? 0.0 : m4[axis]);
    for (int i = 0; i < 5; ++i)
      midswing.control_points[i][axis] =
          resolve(ch.m[i], l3[axis], m4[axis]);
  }

  // Touchdown: entry from forward continuity with midswing (which lands on
  // g_td by construction), exit pinned into stance.
  BezierSegment& touchdown = traj.segments[segment_index(LegMode::kTouchdown)];
  touchdown.duration = t3;
  const std::array<Vec3, 5>& m = midswing.control_points;
  const Vec3 td0 = m[4];
  const Vec3 td1 = td0 + r2 * (m[4] - m[3]);
  const Vec3 td2 =
      2.0 * td1 - td0 + r2 * r2 * (m[4] - 2.0 * m[3] + m[2]);
  touchdown.control_points = {td0, td1, td2, td3, td4};

  return traj;
}

TipCommand evaluate(const LegTrajectory& traj, LegMode mode,
                    double local_progress) {
  if (!(local_progress >= 0.0 && local_progress <= 1.0))
    throw ValidationError("evaluate: local_progress must be in [0, 1]");
  const BezierSegment& seg = traj.segments[segment_index(mode)];
  TipCommand cmd;
  cmd.position = seg.position(local_progress);
  cmd.velocity = seg.velocity(local_progress);
  cmd.acceleration = seg.acceleration(local_progress);
  return cmd;
}

C2Report verify_c2(const LegTrajectory& traj, double tolerance) {
  C2Report report;
  for (int i = 0; i < kSegmentsPerStep; ++i) {
    const BezierSegment& a = traj.segments[i];
    const BezierSegment& b = traj.segments[(i + 1) % kSegmentsPerStep];
    report.position_gap[i] = (b.position(0.0) - a.position(1.0)).norm();
    report.velocity_gap[i] = (b.velocity(0.0) - a.velocity(1.0)).norm();
    report.acceleration_gap[i] =
        (b.acceleration(0.0) - a.acceleration(1.0)).norm();
  }
  double worst = -1.0;
  for (int i = 0; i < kSegmentsPerStep; ++i) {
    report.max_position_gap =
        std::max(report.max_position_gap, report.position_gap[i]);
    report.max_velocity_gap =
        std::max(report.max_velocity_gap, report.velocity_gap[i]);
    report.max_acceleration_gap =
        std::max(report.max_acceleration_gap, report.acceleration_gap[i]);
    double badness = report.position_gap[i] + report.velocity_gap[i] +
                     report.acceleration_gap[i];
    if (badness > worst) {
      worst = badness;
      report.worst_junction = i;
    }
  }
  report.passed = report.max_position_gap <= tolerance &&
                  report.max_velocity_gap <= tolerance &&
                  report.max_acceleration_gap <= tolerance;
  return report;
}

std::string describe(const C2Report& r) {
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "%s: max gaps pos %.3e m, vel %.3e m/s, acc %.3e m/s^2, "
                "worst at %s->%s",
                r.passed ? "pass" : "FAIL", r.max_position_gap,
                r.max_velocity_gap, r.max_acceleration_gap,
                kLegModeNames[r.worst_junction],
                kLegModeNames[(r.worst_junction + 1) % 4]);
  return buf;
}

}  // namespace hexctl
