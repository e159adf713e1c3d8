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

#include "hexctl/model.hpp"

#include <cmath>

#include "hexctl/errors.hpp"

namespace hexctl {
namespace {

constexpr double kCollisionBuffer = 0.1;  // m, between same-side neighbours

void rebuild_mount_poses(BodyModel& body) {
  // Coxa pivots: front +hip_spacing, middle 0, rear -hip_spacing fore-aft.
  const std::array<double, kNumLegs> mount_x = {
      body.hip_spacing, body.hip_spacing, 0.0, 0.0,
      -body.hip_spacing, -body.hip_spacing};
  for (LegId id : kAllLegs) {
    int i = leg_index(id);
    double side = is_left_leg(id) ? 1.0 : -1.0;
    Eigen::Isometry3d pose = Eigen::Isometry3d::Identity();
    pose.translation() = Vec3(mount_x[i], side * body.mount_lateral, 0.0);
    pose.linear() =
        Eigen::AngleAxisd(side * M_PI / 2.0, Vec3::UnitZ()).toRotationMatrix();
    body.mount_poses[i] = pose;
  }
}

void require(bool ok, const std::string& field, const std::string& why) {
  if (!ok) throw ValidationError(field + ": " + why);
}

}  // namespace

RobotModel default_model() {
  RobotModel m;
  rebuild_mount_poses(m.body);
  for (LegId id : kAllLegs) m.legs[leg_index(id)].leg_id = id;
  validate(m);
  return m;
}

RobotModel model_from_config(const ConfigMap& cfg) {
  RobotModel m = default_model();
  BodyModel& b = m.body;
  b.length = cfg.get_double("body.length", b.length);
  b.width = cfg.get_double("body.width", b.width);
  b.stance_height = cfg.get_double("body.stance_height", b.stance_height);
  b.mass = cfg.get_double("body.mass", b.mass);
  b.hip_spacing = cfg.get_double("body.hip_spacing", b.hip_spacing);
  b.mount_lateral = cfg.get_double("body.mount_lateral", b.mount_lateral);
  rebuild_mount_poses(b);

  LegModel proto = m.legs[0];
  proto.l_coxa = cfg.get_double("leg.l_coxa", proto.l_coxa);
  proto.l_femur = cfg.get_double("leg.l_femur", proto.l_femur);
  proto.l_tibia = cfg.get_double("leg.l_tibia", proto.l_tibia);
  for (int j = 0; j < 3; ++j) {
    std::string base = std::string("leg.q") + std::to_string(j + 1);
    auto lim = cfg.get_list(base + "_limits", {proto.joint_limits[j].lo,
                                               proto.joint_limits[j].hi});
    proto.joint_limits[j] = Interval{lim[0], lim[1]};
  }
  auto masses = cfg.get_list(
      "leg.link_masses",
      {proto.link_masses[0], proto.link_masses[1], proto.link_masses[2]});
  auto coms = cfg.get_list("leg.link_com_offsets",
                           {proto.link_com_offsets[0], proto.link_com_offsets[1],
                            proto.link_com_offsets[2]});
  for (int j = 0; j < 3; ++j) {
    proto.link_masses[j] = masses[j];
    proto.link_com_offsets[j] = coms[j];
  }
  for (LegId id : kAllLegs) {
    m.legs[leg_index(id)] = proto;
    m.legs[leg_index(id)].leg_id = id;
  }

  JointEnvelope& e = m.envelope;
  auto peak = cfg.get_list("envelope.peak_torque",
                           {e.peak_torque[0], e.peak_torque[1], e.peak_torque[2]});
  auto cont = cfg.get_list("envelope.continuous_torque",
                           {e.continuous_torque[0], e.continuous_torque[1],
                            e.continuous_torque[2]});
  auto spd = cfg.get_list("envelope.max_speed",
                          {e.max_speed[0], e.max_speed[1], e.max_speed[2]});
  for (int j = 0; j < 3; ++j) {
    e.peak_torque[j] = peak[j];
    e.continuous_torque[j] = cont[j];
    e.max_speed[j] = spd[j];
  }

  m.workspace_length = cfg.get_double("workspace.length", m.workspace_length);

  validate(m);
  return m;
}

RobotModel load_model(const std::string& config_text) {
  return model_from_config(ConfigMap::parse(config_text));
}

std::string serialize_model(const RobotModel& m) {
  ConfigMap cfg;
  cfg.set_double("body.length", m.body.length);
  cfg.set_double("body.width", m.body.width);
  cfg.set_double("body.stance_height", m.body.stance_height);
  cfg.set_double("body.mass", m.body.mass);
  cfg.set_double("body.hip_spacing", m.body.hip_spacing);
  cfg.set_double("body.mount_lateral", m.body.mount_lateral);
  const LegModel& leg = m.legs[0];
  cfg.set_double("leg.l_coxa", leg.l_coxa);
  cfg.set_double("leg.l_femur", leg.l_femur);
  cfg.set_double("leg.l_tibia", leg.l_tibia);
  for (int j = 0; j < 3; ++j)
    cfg.set_list("leg.q" + std::to_string(j + 1) + "_limits",
                 {leg.joint_limits[j].lo, leg.joint_limits[j].hi});
  cfg.set_list("leg.link_masses",
               {leg.link_masses[0], leg.link_masses[1], leg.link_masses[2]});
  cfg.set_list("leg.link_com_offsets",
               {leg.link_com_offsets[0], leg.link_com_offsets[1],
                leg.link_com_offsets[2]});
  cfg.set_list("envelope.peak_torque",
               {m.envelope.peak_torque[0], m.envelope.peak_torque[1],
                m.envelope.peak_torque[2]});
  cfg.set_list("envelope.continuous_torque",
               {m.envelope.continuous_torque[0], m.envelope.continuous_torque[1],
                m.envelope.continuous_torque[2]});
  cfg.set_list("envelope.max_speed",
               {m.envelope.max_speed[0], m.envelope.max_speed[1],
                m.envelope.max_speed[2]});
  cfg.set_double("workspace.length", m.workspace_length);
  return cfg.serialize();
}

void validate(const RobotModel& m) {
  const BodyModel& b = m.body;
  require(b.length > 0, "body.length", "must be > 0");
  require(b.width > 0, "body.width", "must be > 0");
  require(b.stance_height > 0, "body.stance_height", "must be > 0");
  require(b.mass > 0, "body.mass", "must be > 0");
  require(b.hip_spacing > 0, "body.hip_spacing", "must be > 0");
  require(b.mount_lateral >= 0, "body.mount_lateral", "must be >= 0");

  double leg_mass_total = 0.0;
  for (LegId id : kAllLegs) {
    const LegModel& leg = m.leg(id);
    require(leg.leg_id == id, "leg.leg_id", "leg identifiers must be distinct");
    require(leg.l_coxa > 0, "leg.l_coxa", "must be > 0");
    require(leg.l_femur > 0, "leg.l_femur", "must be > 0");
    require(leg.l_tibia > 0, "leg.l_tibia", "must be > 0");
    for (int j = 0; j < 3; ++j) {
      std::string field = "leg.q" + std::to_string(j + 1) + "_limits";
      require(leg.joint_limits[j].width() > 0, field,
              "interval must be nonempty");
      require(leg.link_masses[j] >= 0, "leg.link_masses", "must be >= 0");
      require(leg.link_com_offsets[j] >= 0, "leg.link_com_offsets",
              "must be >= 0");
    }
    leg_mass_total += leg.link_masses.sum();
  }
  require(leg_mass_total < 0.5 * b.mass, "leg.link_masses",
          "legs must stay light relative to the body");

  for (int j = 0; j < 3; ++j) {
    require(m.envelope.peak_torque[j] >= m.envelope.continuous_torque[j],
            std::string("envelope.peak_torque.") + kJointNames[j],
            "peak torque must be >= continuous torque");
    require(m.envelope.continuous_torque[j] > 0, "envelope.continuous_torque",
            "must be > 0");
    require(m.envelope.max_speed[j] > 0, "envelope.max_speed", "must be > 0");
  }

  require(m.workspace_length > 0, "workspace.length", "must be > 0");
  // Leg-collision constraint: same-side neighbours are 2*hip_spacing apart;
  // a full stance sweep must leave the safety buffer between their feet.
  require(m.workspace_length + kCollisionBuffer <= 2.0 * b.hip_spacing + 1e-12,
          "workspace.length",
          "workspace + " + std::to_string(kCollisionBuffer) +
              " m buffer must fit within twice the hip spacing");

  // Mirror symmetry of the mounts about the sagittal plane.
  for (int i = 0; i < kNumLegs; i += 2) {
    const Vec3 tl = b.mount_poses[i].translation();
    const Vec3 tr = b.mount_poses[i + 1].translation();
    require(std::abs(tl.x() - tr.x()) < 1e-12 &&
                std::abs(tl.y() + tr.y()) < 1e-12 &&
                std::abs(tl.z() - tr.z()) < 1e-12,
            "body.mount_poses", "left/right mounts must mirror");
  }
}

double max_kinematic_speed(const RobotModel& model, double duty_factor,
                           double step_frequency) {
  if (!(duty_factor > 0.0 && duty_factor < 1.0))
    throw ValidationError("duty_factor: must be in (0, 1)");
  if (!(step_frequency > 0.0))
    throw ValidationError("step_frequency: must be > 0");
  return model.workspace_length * step_frequency / duty_factor;
}

Vec3 default_foothold(const RobotModel& model, LegId id) {
  const Vec3 mount = model.mount_pose(id).translation();
  double side = is_left_leg(id) ? 1.0 : -1.0;
  return Vec3(mount.x(), side * model.body.width / 2.0,
              -model.body.stance_height);
}

Vec3 body_to_leg_point(const RobotModel& model, LegId id, const Vec3& p_body) {
  return model.mount_pose(id).inverse() * p_body;
}

Vec3 leg_to_body_point(const RobotModel& model, LegId id, const Vec3& p_leg) {
  return model.mount_pose(id) * p_leg;
}

Vec3 body_to_leg_vector(const RobotModel& model, LegId id, const Vec3& v_body) {
  return model.mount_pose(id).linear().transpose() * v_body;
}

Vec3 leg_to_body_vector(const RobotModel& model, LegId id, const Vec3& v_leg) {
  return model.mount_pose(id).linear() * v_leg;
}

}  // namespace hexctl
