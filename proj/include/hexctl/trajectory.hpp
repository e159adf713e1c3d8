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

#include "hexctl/gait.hpp"
#include "hexctl/model.hpp"
#include "hexctl/types.hpp"

namespace hexctl {

// One quartic Bezier span of the step cycle, parameterized on u in [0, 1]
// and played back over `duration` seconds. Endpoint derivatives follow the
// Bezier identities B'(0) = 4(P1-P0), B'(1) = 4(P4-P3),
// B''(0) = 12(P2-2P1+P0), B''(1) = 12(P4-2P3+P2), each divided by the
// appropriate power of the duration.
struct BezierSegment {
  std::array<Vec3, 5> control_points;
  double duration = 0.0;  // s

  Vec3 position(double u) const;
  Vec3 velocity(double u) const;      // m/s, time-scaled
  Vec3 acceleration(double u) const;  // m/s^2, time-scaled
};

// Tip setpoint handed to the leg controller.
struct TipCommand {
  Vec3 position = Vec3::Zero();      // m, body frame
  Vec3 velocity = Vec3::Zero();      // m/s
  Vec3 acceleration = Vec3::Zero();  // m/s^2
};

// A full cyclic step for one leg: stance, liftoff, midswing, touchdown, in
// that order, C2-smooth across all four junctions including the wrap back
// into stance. 5 control points per segment, 20 in total. The stance span
// has collinear uniformly spaced points, so the stance tip velocity is
// exactly the negated commanded body velocity at the foot and stance
// acceleration is exactly zero.
struct LegTrajectory {
  std::array<BezierSegment, 4> segments;
  Vec3 default_foothold = Vec3::Zero();  // m, body frame
  Vec3 stride_vector = Vec3::Zero();     // m, body frame, z = 0
};

inline constexpr int kSegmentsPerStep = 4;
inline constexpr int kControlPointsPerStep = 20;

inline int segment_index(LegMode mode) { return static_cast<int>(mode); }

// Builds the cyclic step for one leg. The stride is the planar body-frame
// displacement the foot must cover over stance: velocity at the foothold
// (including the yaw-rate contribution, linearized as a straight chord)
// times duty/step_frequency. The touchdown point is foothold + stride/2 and
// the swing apex is `clearance` above the foothold plane at the midswing
// midpoint. Throws WorkspaceError when the stride exceeds the workspace and
// ConstructionError if the junction system degenerates.
LegTrajectory build_trajectory(const RobotModel& model, LegId leg_id,
                               const GaitDefinition& gait,
                               const BodyVelocity& body_velocity,
                               double step_frequency, double clearance);

inline constexpr double kDefaultClearance = 0.08;  // m

// Samples the active segment at the gait's local progress.
TipCommand evaluate(const LegTrajectory& traj, LegMode mode,
                    double local_progress);

struct C2Report {
  // Worst mismatch across the four cyclic junctions.
  double max_position_gap = 0.0;      // m
  double max_velocity_gap = 0.0;      // m/s
  double max_acceleration_gap = 0.0;  // m/s^2
  int worst_junction = 0;             // segment index whose exit is worst
  bool passed = false;

  std::array<double, 4> position_gap{};
  std::array<double, 4> velocity_gap{};
  std::array<double, 4> acceleration_gap{};
};

// Checks position/velocity/acceleration continuity at the four cyclic
// junctions under each segment's own time scaling. Report-only.
C2Report verify_c2(const LegTrajectory& traj, double tolerance);

std::string describe(const C2Report& report);

}  // namespace hexctl
