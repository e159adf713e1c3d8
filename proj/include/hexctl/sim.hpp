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
#include <cstdint>
#include <string>
#include <vector>

#include "hexctl/dynamics.hpp"
#include "hexctl/gait.hpp"
#include "hexctl/impedance.hpp"
#include "hexctl/kinematics.hpp"
#include "hexctl/model.hpp"
#include "hexctl/trajectory.hpp"
#include "hexctl/types.hpp"

namespace hexctl {

// Deterministic plant: one 6-DOF rigid body carrying the full robot mass,
// six massless legs that transmit force only through their commanded joint
// torques, and a penalty ground plane at z = 0.
//
// A foot in the air tracks its commanded tip exactly (massless quasi-static
// legs). On touching the plane it anchors; while anchored the leg's actual
// configuration is the body-frame image of the anchor, the held joint
// torques map through J^-T to the force the foot presses into the ground,
// and the penetration state relaxes so the penalty law k*pen + c*dpen/dt
// carries that press. The ground reaction (normal never attractive,
// tangential viscous and saturated at mu*normal) is what the body feels, so
// zero torques mean zero support.

struct ContactParams {
  double stiffness = 5.0e4;         // N/m
  double damping = 2.0e3;           // N*s/m
  double friction_viscous = 2.0e4;  // N*s/m, tangential
  double mu = 0.7;
};

ContactParams contact_from_config(const ConfigMap& cfg);

struct SimParams {
  ContactParams contact;
  Vec3 body_box = {1.0, 0.4, 0.25};  // m, inertia box of the lumped body
  double gravity = kGravity;         // m/s^2, plant gravity magnitude
  double control_rate = 800.0;       // Hz
  int substeps = 4;                  // physics substeps per control tick
  double divergence_speed = 25.0;    // m/s
  double divergence_spin = 100.0;    // rad/s
  // Foot force mapping refuses Jacobians below this smallest singular
  // value; the leg's press force is frozen for the tick instead.
  double singular_freeze = 1e-4;
  // A leg never presses harder than this multiple of body weight; near a
  // straight knee the torque-to-force map diverges along the leg axis.
  double press_limit_factor = 3.0;

  double physics_dt() const { return 1.0 / (control_rate * substeps); }
  Mat3 body_inertia(double mass) const;
};

struct FootState {
  bool in_contact = false;
  Eigen::Vector2d anchor = Eigen::Vector2d::Zero();  // world xy
  double penetration = 0.0;                          // m, >= 0
  Vec3 press_world = Vec3::Zero();    // leg force on the ground, world frame
  Vec3 contact_force = Vec3::Zero();  // ground reaction on the robot, world
};

struct SimState {
  double time = 0.0;
  Vec3 position = Vec3::Zero();  // body origin (CoM), world frame
  Eigen::Quaterniond orientation = Eigen::Quaterniond::Identity();
  Vec3 linear_velocity = Vec3::Zero();   // world frame
  Vec3 angular_velocity = Vec3::Zero();  // body frame
  std::array<JointState, kNumLegs> joints{};
  std::array<FootState, kNumLegs> feet{};
  std::array<Vec3, kNumLegs> actual_tip{};  // body frame bookkeeping
  long singular_freezes = 0;  // near-singular foot-force events
};

// Per-leg controller output for one tick: the tip setpoint in both frames
// plus the clamped joint torques.
struct LegCommand {
  TipCommand tip_body;
  TipCommand tip_leg;
  JointCommand joints;
  LegMode mode = LegMode::kStance;
};

using LegCommands = std::array<LegCommand, kNumLegs>;

// Body standing at nominal height with all feet planted at their default
// footholds.
SimState initial_standing_state(const RobotModel& model);

// One physics substep with the tick's commands held. Throws DivergenceError
// when the state leaves the sanity envelope.
void step(const RobotModel& model, SimState& state, const LegCommands& commands,
          const SimParams& params, double dt);

struct ControllerConfig {
  ImpedanceGains gains;
  double stance_lambda = 0.01;  // stance solver damping
  double clearance = 0.08;      // m, swing apex height
  // Commanded velocity ramps in linearly over this long; a step command
  // from standstill otherwise opens a large tracking error that pitches
  // the body over the soft leg springs.
  double ramp_time = 2.0;  // s
};

ControllerConfig controller_from_config(const ConfigMap& cfg);

// The 800 Hz control stack: gait phase -> trajectory -> IK -> inverse
// dynamics + stance force distribution -> task-frame impedance. A zero step
// frequency means standing: every leg is commanded to its default foothold.
class Controller {
 public:
  Controller(const RobotModel& model, const GaitDefinition& gait,
             const ControllerConfig& config, const BodyVelocity& command,
             double step_frequency);

  LegCommands tick(const SimState& state, const GaitPhaseState& gait_state);

  const LegTrajectory& trajectory(LegId id) const {
    return trajectories_[leg_index(id)];
  }

 private:
  void rebuild_trajectories(double velocity_scale);

  const RobotModel& model_;
  GaitDefinition gait_;
  ControllerConfig config_;
  BodyVelocity command_;
  double step_frequency_;
  bool standing_;
  double control_rate_ = 800.0;
  double trajectory_scale_ = 1.0;
  std::array<LegTrajectory, kNumLegs> trajectories_{};
  std::array<Vec3, kNumLegs> prev_qdot_des_{};
  bool have_prev_qdot_ = false;
};

struct EpisodeMeta {
  std::string name = "episode";
  std::string gait = "tripod";
  BodyVelocity command;
  double step_frequency = 1.0;
  double duration = 0.0;
  double control_rate = 800.0;
  std::uint64_t seed = 0;
};

// Tick-by-tick log. Fixed column order: time, body pose (7), body twist (6,
// body frame), commanded tips (3x6), actual tips (3x6), joint torques (3x6),
// contact flags (6), clamp flags (18), then the global gait phase.
struct EpisodeLog {
  EpisodeMeta meta;
  std::vector<std::array<double, 93>> rows;
};

const std::vector<std::string>& episode_columns();

void write_episode_csv(const EpisodeLog& log, const std::string& path);
// Throws LogFormatError (with the offending row) on schema violations.
EpisodeLog read_episode_csv(const std::string& path);

struct EpisodeResult {
  EpisodeLog log;
  bool diverged = false;
  std::string divergence_reason;
};

// Runs controller and plant for the duration: exactly
// round(duration * control_rate) controller evaluations, each followed by
// `substeps` physics steps. Divergence ends the episode early with the
// partial log and the reason recorded.
EpisodeResult run_episode(const RobotModel& model, const GaitDefinition& gait,
                          const ControllerConfig& config,
                          const BodyVelocity& command, double step_frequency,
                          double duration, const SimParams& params,
                          const EpisodeMeta& meta = {});

}  // namespace hexctl
