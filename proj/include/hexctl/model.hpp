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

#include "hexctl/config.hpp"
#include "hexctl/types.hpp"

namespace hexctl {

// Frames: body frame has x forward, y left, z up, origin at the geometric
// body centre. Each leg-base frame sits at the coxa pivot with x pointing
// outward along the coxa's neutral axis and z up; left legs are yawed +90deg
// from the body frame, right legs -90deg, which makes the two sides mirror
// images of each other.

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double v) const { return v >= lo && v <= hi; }
  double width() const { return hi - lo; }
};

struct BodyModel {
  double length = 1.0;          // m, L_B at nominal stance
  double width = 1.08;          // m, W_B at nominal stance (tip to tip)
  double stance_height = 0.55;  // m, H_B nominal walking height
  double mass = 50.5;           // kg, with battery
  double hip_spacing = 0.3;     // m, fore-aft distance between adjacent coxae
  // Sideways coxa pivot offset from the centreline. Together with the
  // nominal tip width this sets the lateral leg reach; 0.30 keeps the legs
  // near 90% extension at stance depth instead of riding the knee-straight
  // singularity.
  double mount_lateral = 0.30;  // m

  // Body frame -> leg-base frame, derived from the fields above.
  std::array<Eigen::Isometry3d, kNumLegs> mount_poses;
};

struct LegModel {
  LegId leg_id = LegId::kFrontLeft;
  double l_coxa = 0.065;   // m
  double l_femur = 0.275;  // m
  double l_tibia = 0.365;  // m
  // q1 coxa yaw, q2 femur pitch (up positive), q3 knee flexion.
  std::array<Interval, 3> joint_limits = {
      Interval{-0.9, 0.9}, Interval{-1.1, 0.6}, Interval{0.4, 2.4}};
  // Legs are light by design; defaults put all six legs at 15% of the robot
  // mass with link COMs at midpoints.
  Vec3 link_masses = {0.5, 0.45, 0.3125};        // kg
  Vec3 link_com_offsets = {0.0325, 0.1375, 0.1825};  // m along each link
};

struct JointEnvelope {
  Vec3 peak_torque = {80.0, 112.0, 80.0};       // N*m (coxa, femur, tibia)
  Vec3 continuous_torque = {21.0, 30.0, 21.0};  // N*m
  Vec3 max_speed = {8.0, 11.0, 8.0};            // rad/s
};

struct RobotModel {
  BodyModel body;
  std::array<LegModel, kNumLegs> legs;
  JointEnvelope envelope;
  double workspace_length = 0.5;  // m, fore-aft tip workspace per leg

  const LegModel& leg(LegId id) const { return legs[leg_index(id)]; }
  const Eigen::Isometry3d& mount_pose(LegId id) const {
    return body.mount_poses[leg_index(id)];
  }
};

RobotModel default_model();

// Parses overrides from flat config text and fills the rest with defaults.
// Throws ConfigError on parse failures (with line context) and
// ValidationError naming the violated field.
RobotModel load_model(const std::string& config_text);
RobotModel model_from_config(const ConfigMap& cfg);

std::string serialize_model(const RobotModel& model);

// Throws ValidationError naming the first violated field.
void validate(const RobotModel& model);

// Body speed at which the stance sweep exactly consumes the fore-aft
// workspace: workspace_length * step_frequency / duty_factor.
double max_kinematic_speed(const RobotModel& model, double duty_factor,
                           double step_frequency);

// Nominal tip position of a leg in the body frame (feet at +-width/2
// laterally, directly under the coxa pivot fore-aft, at stance depth).
Vec3 default_foothold(const RobotModel& model, LegId id);

// Convenience transforms between body frame and a leg-base frame.
Vec3 body_to_leg_point(const RobotModel& model, LegId id, const Vec3& p_body);
Vec3 leg_to_body_point(const RobotModel& model, LegId id, const Vec3& p_leg);
Vec3 body_to_leg_vector(const RobotModel& model, LegId id, const Vec3& v_body);
Vec3 leg_to_body_vector(const RobotModel& model, LegId id, const Vec3& v_leg);

}  // namespace hexctl
