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

#include "hexctl/sim.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <Eigen/Dense>

#include "hexctl/errors.hpp"

namespace hexctl {
namespace {

constexpr double kGroundHeight = 0.0;

Vec3 gravity_vector() { return Vec3(0.0, 0.0, -kGravity); }

// Tip force the held torques press with: J^-T tau, solved through a lightly
// damped SVD so the gain along a nearly straight leg stays bounded instead
// of diverging as 1/sigma_min.
constexpr double kPressDamping = 5e-3;

Vec3 press_force(const Mat3& jacobian_matrix, const Vec3& tau) {
  Eigen::JacobiSVD<Mat3> svd(jacobian_matrix.transpose(),
                             Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vec3& sigma = svd.singularValues();
  Vec3 coeffs = svd.matrixU().transpose() * tau;
  for (int i = 0; i < 3; ++i)
    coeffs[i] *= sigma[i] / (sigma[i] * sigma[i] + kPressDamping * kPressDamping);
  return svd.matrixV() * coeffs;
}

}  // namespace

Mat3 SimParams::body_inertia(double mass) const {
  const double lx = body_box.x(), ly = body_box.y(), lz = body_box.z();
  Vec3 diag(mass / 12.0 * (ly * ly + lz * lz),
            mass / 12.0 * (lx * lx + lz * lz),
            mass / 12.0 * (lx * lx + ly * ly));
  return diag.asDiagonal();
}

ContactParams contact_from_config(const ConfigMap& cfg) {
  ContactParams p;
  p.stiffness = cfg.get_double("contact.stiffness", p.stiffness);
  p.damping = cfg.get_double("contact.damping", p.damping);
  p.friction_viscous =
      cfg.get_double("contact.friction_viscous", p.friction_viscous);
  p.mu = cfg.get_double("contact.mu", p.mu);
  if (p.stiffness < 0 || p.damping < 0 || p.friction_viscous < 0 || p.mu < 0)
    throw ValidationError("contact parameters must be >= 0");
  return p;
}

ControllerConfig controller_from_config(const ConfigMap& cfg) {
  ControllerConfig c;
  c.gains = gains_from_config(cfg);
  c.stance_lambda = cfg.get_double("stance.lambda", c.stance_lambda);
  c.clearance = cfg.get_double("trajectory.clearance", c.clearance);
  if (c.stance_lambda < 0) throw ValidationError("stance.lambda must be >= 0");
  if (c.clearance < 0)
    throw ValidationError("trajectory.clearance must be >= 0");
  return c;
}

SimState initial_standing_state(const RobotModel& model) {
  SimState state;
  state.position = Vec3(0.0, 0.0, model.body.stance_height);
  for (LegId id : kAllLegs) {
    int i = leg_index(id);
    const Vec3 foothold = default_foothold(model, id);
    state.actual_tip[i] = foothold;
    state.joints[i].q = ik(model.leg(id), body_to_leg_point(model, id, foothold));
    FootState& foot = state.feet[i];
    foot.in_contact = true;
    const Vec3 world = state.position + foothold;  // identity orientation
    foot.anchor = world.head<2>();
    foot.penetration = 0.0;
  }
  return state;
}

void step(const RobotModel& model, SimState& state, const LegCommands& commands,
          const SimParams& params, double dt) {
  const ContactParams& contact = params.contact;
  const Mat3 R = state.orientation.toRotationMatrix();
  const double mass = model.body.mass;

  Vec3 force_w = mass * Vec3(0.0, 0.0, -params.gravity);
  Vec3 moment_w = Vec3::Zero();

  for (LegId id : kAllLegs) {
    const int i = leg_index(id);
    const LegModel& leg = model.leg(id);
    FootState& foot = state.feet[i];
    const LegCommand& cmd = commands[i];
    foot.contact_force = Vec3::Zero();

    Vec3 tip_body;
    if (!foot.in_contact) {
      // Airborne: massless leg tracks the commanded tip exactly.
      tip_body = cmd.tip_body.position;
      const Vec3 p_world = state.position + R * tip_body;
      if (p_world.z() < kGroundHeight) {
        foot.in_contact = true;
        foot.anchor = p_world.head<2>();
        foot.penetration = kGroundHeight - p_world.z();
      }
    }

    if (foot.in_contact) {
      Vec3 p_world(foot.anchor.x(), foot.anchor.y(),
                   kGroundHeight - foot.penetration);
      tip_body = R.transpose() * (p_world - state.position);
      const Vec3 tip_leg = body_to_leg_point(model, id, tip_body);
      const Vec3 q = ik_nearest(leg, tip_leg);

      Vec3 press;
      const Mat3 J = jacobian(leg, q);
      const double sigma_min =
          Eigen::JacobiSVD<Mat3>(J).singularValues().minCoeff();
      if (sigma_min < params.singular_freeze) {
        press = foot.press_world;  // freeze this tick's force
        ++state.singular_freezes;
      } else {
        const Vec3 press_leg = press_force(J, cmd.joints.torques);
        press = R * leg_to_body_vector(model, id, press_leg);
        const double press_limit =
            params.press_limit_factor * mass * kGravity;
        if (press.norm() > press_limit) press *= press_limit / press.norm();
        foot.press_world = press;
      }

      const double press_down = -press.z();
      if (press_down <= 0.0) {
        // Ground cannot pull; the massless foot leaves instantly.
        foot.in_contact = false;
        foot.penetration = 0.0;
        tip_body = cmd.tip_body.position;
      } else {
        // Penetration relaxes so the penalty spring-damper carries the
        // press: N = max(0, k*pen + c*dpen/dt) with c*dpen/dt closing the
        // gap to the quasi-static depth press/k.
        const double pen_rate =
            (press_down - contact.stiffness * foot.penetration) /
            contact.damping;
        foot.penetration += pen_rate * dt;
        if (foot.penetration <= 0.0) {
          foot.in_contact = false;
          foot.penetration = 0.0;
          tip_body = cmd.tip_body.position;
        } else {
          const double normal = std::max(
              0.0, contact.stiffness * foot.penetration +
                       contact.damping * pen_rate);
          // Tangential: the foot creeps against viscous friction under the
          // planar press; the reaction saturates on the cone.
          const Eigen::Vector2d press_t = press.head<2>();
          foot.anchor += (press_t / contact.friction_viscous) * dt;
          Eigen::Vector2d reaction_t = -press_t;
          const double cone = contact.mu * normal;
          if (reaction_t.norm() > cone)
            reaction_t *= cone / reaction_t.norm();

          const Vec3 reaction(reaction_t.x(), reaction_t.y(), normal);
          p_world = Vec3(foot.anchor.x(), foot.anchor.y(),
                         kGroundHeight - foot.penetration);
          force_w += reaction;
          moment_w += (p_world - state.position).cross(reaction);
          foot.contact_force = reaction;
          tip_body = R.transpose() * (p_world - state.position);
        }
      }
    }

    // Joint bookkeeping: the massless leg's configuration is wherever its
    // tip is, commanded or anchored.
    const Vec3 q_new = ik_nearest(leg, body_to_leg_point(model, id, tip_body));
    JointState& js = state.joints[i];
    js.qdot = (q_new - js.q) / dt;
    js.q = q_new;
    state.actual_tip[i] = tip_body;
  }

  // Semi-implicit Euler, velocity first.
  state.linear_velocity += (force_w / mass) * dt;
  state.position += state.linear_velocity * dt;

  const Mat3 inertia = params.body_inertia(mass);
  const Vec3 moment_body = R.transpose() * moment_w;
  const Vec3 omega = state.angular_velocity;
  state.angular_velocity +=
      inertia.inverse() * (moment_body - omega.cross(inertia * omega)) * dt;
  const Vec3 dtheta = state.angular_velocity * dt;
  const double angle = dtheta.norm();
  if (angle > 0.0) {
    state.orientation =
        state.orientation * Eigen::Quaterniond(Eigen::AngleAxisd(
                                angle, dtheta / angle));
  }
  state.orientation.normalize();
  state.time += dt;

  if (state.linear_velocity.norm() > params.divergence_speed)
    throw DivergenceError("body speed " +
                          std::to_string(state.linear_velocity.norm()) +
                          " m/s exceeded sanity bound at t = " +
                          std::to_string(state.time));
  if (state.angular_velocity.norm() > params.divergence_spin)
    throw DivergenceError("body spin " +
                          std::to_string(state.angular_velocity.norm()) +
                          " rad/s exceeded sanity bound at t = " +
                          std::to_string(state.time));
}

Controller::Controller(const RobotModel& model, const GaitDefinition& gait,
                       const ControllerConfig& config,
                       const BodyVelocity& command, double step_frequency)
    : model_(model),
      gait_(gait),
      config_(config),
      command_(command),
      step_frequency_(step_frequency),
      standing_(step_frequency == 0.0) {
  // Build at full command first so workspace violations surface before the
  // episode starts.
  if (!standing_) rebuild_trajectories(1.0);
}

void Controller::rebuild_trajectories(double velocity_scale) {
  BodyVelocity scaled = command_;
  scaled.vx *= velocity_scale;
  scaled.vy *= velocity_scale;
  scaled.wz *= velocity_scale;
  for (LegId id : kAllLegs)
    trajectories_[leg_index(id)] = build_trajectory(
        model_, id, gait_, scaled, step_frequency_, config_.clearance);
  trajectory_scale_ = velocity_scale;
}

LegCommands Controller::tick(const SimState& state,
                             const GaitPhaseState& gait_state) {
  LegCommands commands;

  if (!standing_ && config_.ramp_time > 0.0) {
    const double scale = std::min(1.0, state.time / config_.ramp_time);
    if (scale != trajectory_scale_) rebuild_trajectories(scale);
  }

  // Tip setpoints for this tick.
  for (LegId id : kAllLegs) {
    const int i = leg_index(id);
    LegCommand& cmd = commands[i];
    if (standing_) {
      cmd.mode = LegMode::kStance;
      cmd.tip_body.position = default_foothold(model_, id);
    } else {
      const LegPhase& phase = gait_state.legs[i];
      cmd.mode = phase.mode;
      cmd.tip_body =
          evaluate(trajectories_[i], phase.mode, phase.local_progress);
    }
    cmd.tip_leg.position = body_to_leg_point(model_, id, cmd.tip_body.position);
    cmd.tip_leg.velocity = body_to_leg_vector(model_, id, cmd.tip_body.velocity);
    cmd.tip_leg.acceleration =
        body_to_leg_vector(model_, id, cmd.tip_body.acceleration);
  }

  // Quasi-static support distribution over the commanded stance feet.
  StanceProblem problem;
  problem.body_wrench = standing_wrench(model_.body.mass);
  problem.damping_lambda = config_.stance_lambda;
  std::vector<int> stance_legs;
  for (int i = 0; i < kNumLegs; ++i) {
    if (commands[i].mode == LegMode::kStance) {
      stance_legs.push_back(i);
      problem.foot_positions.push_back(commands[i].tip_body.position);
    }
  }
  std::array<Vec3, kNumLegs> support{};
  if (!stance_legs.empty()) {
    const StanceSolution sol = solve_stance_forces(problem);
    for (size_t k = 0; k < stance_legs.size(); ++k)
      support[stance_legs[k]] = sol.forces[k];
  }

  // Feed-forward + impedance per leg.
  for (LegId id : kAllLegs) {
    const int i = leg_index(id);
    const LegModel& leg = model_.leg(id);
    LegCommand& cmd = commands[i];

    const Vec3 q_des = ik_nearest(leg, cmd.tip_leg.position);
    Vec3 qdot_des = Vec3::Zero();
    try {
      qdot_des = ik_velocity(leg, q_des, cmd.tip_leg.velocity);
    } catch (const SingularityError&) {
      // Leave the desired joint rates at zero for this tick.
    }
    Vec3 qddot_des = Vec3::Zero();
    if (have_prev_qdot_)
      qddot_des = (qdot_des - prev_qdot_des_[i]) * control_rate_;
    prev_qdot_des_[i] = qdot_des;

    Vec3 tau_ff =
        inverse_dynamics(leg, q_des, qdot_des, qddot_des, gravity_vector());
    if (cmd.mode == LegMode::kStance && !support[i].isZero())
      tau_ff += feedforward_torques(
          leg, q_des, body_to_leg_vector(model_, id, support[i]));

    cmd.joints =
        impedance_torques(leg, model_.envelope, state.joints[i].q,
                          state.joints[i].qdot, cmd.tip_leg, config_.gains,
                          tau_ff);
  }
  have_prev_qdot_ = true;
  return commands;
}

const std::vector<std::string>& episode_columns() {
  static const std::vector<std::string> columns = [] {
    std::vector<std::string> c;
    c.emplace_back("time");
    for (const char* f : {"px", "py", "pz", "qw", "qx", "qy", "qz"})
      c.emplace_back(f);
    for (const char* f : {"vx", "vy", "vz", "wx", "wy", "wz"})
      c.emplace_back(f);
    for (const char* group : {"cmd", "act"})
      for (const char* legname : kLegShortNames)
        for (const char* axis : {"x", "y", "z"})
          c.push_back(std::string(group) + "_" + legname + "_" + axis);
    for (const char* legname : kLegShortNames)
      for (const char* joint : kJointNames)
        c.push_back(std::string("tau_") + legname + "_" + joint);
    for (const char* legname : kLegShortNames)
      c.push_back(std::string("contact_") + legname);
    for (const char* legname : kLegShortNames)
      for (const char* joint : kJointNames)
        c.push_back(std::string("clamp_") + legname + "_" + joint);
    c.emplace_back("global_phase");
    return c;
  }();
  return columns;
}

namespace {

std::array<double, 93> make_log_row(const SimState& state,
                                    const LegCommands& commands,
                                    double global_phase) {
  std::array<double, 93> row{};
  int k = 0;
  row[k++] = state.time;
  row[k++] = state.position.x();
  row[k++] = state.position.y();
  row[k++] = state.position.z();
  row[k++] = state.orientation.w();
  row[k++] = state.orientation.x();
  row[k++] = state.orientation.y();
  row[k++] = state.orientation.z();
  const Vec3 v_body =
      state.orientation.toRotationMatrix().transpose() * state.linear_velocity;
  for (int a = 0; a < 3; ++a) row[k++] = v_body[a];
  for (int a = 0; a < 3; ++a) row[k++] = state.angular_velocity[a];
  for (int i = 0; i < kNumLegs; ++i)
    for (int a = 0; a < 3; ++a) row[k++] = commands[i].tip_body.position[a];
  for (int i = 0; i < kNumLegs; ++i)
    for (int a = 0; a < 3; ++a) row[k++] = state.actual_tip[i][a];
  for (int i = 0; i < kNumLegs; ++i)
    for (int a = 0; a < 3; ++a) row[k++] = commands[i].joints.torques[a];
  for (int i = 0; i < kNumLegs; ++i)
    row[k++] = state.feet[i].in_contact ? 1.0 : 0.0;
  for (int i = 0; i < kNumLegs; ++i)
    for (int a = 0; a < 3; ++a)
      row[k++] = commands[i].joints.clamped[a] ? 1.0 : 0.0;
  row[k++] = global_phase;
  return row;
}

}  // namespace

EpisodeResult run_episode(const RobotModel& model, const GaitDefinition& gait,
                          const ControllerConfig& config,
                          const BodyVelocity& command, double step_frequency,
                          double duration, const SimParams& params,
                          const EpisodeMeta& meta) {
  if (!(duration > 0.0)) throw ValidationError("duration must be > 0");

  EpisodeResult result;
  result.log.meta = meta;
  result.log.meta.gait = gait.name;
  result.log.meta.command = command;
  result.log.meta.step_frequency = step_frequency;
  result.log.meta.duration = duration;
  result.log.meta.control_rate = params.control_rate;

  const long ticks = std::lround(duration * params.control_rate);
  const double dt_ctrl = 1.0 / params.control_rate;
  const double dt_phys = params.physics_dt();

  SimState state = initial_standing_state(model);
  GaitPhaseState gait_state = make_phase_state(0.0, gait);
  Controller controller(model, gait, config, command, step_frequency);
  result.log.rows.reserve(ticks);

  // Start the plant consistent with the first tick's commands: stance feet
  // planted where the gait wants them, swing feet tracking theirs. Starting
  // every foot at the default foothold instead kicks the body with up to
  // half a stride of instantaneous tip error.
  {
    const LegCommands initial = controller.tick(state, gait_state);
    for (LegId id : kAllLegs) {
      const int i = leg_index(id);
      const Vec3 tip = initial[i].tip_body.position;
      state.actual_tip[i] = tip;
      state.joints[i].q = ik_nearest(model.leg(id), body_to_leg_point(model, id, tip));
      state.joints[i].qdot = Vec3::Zero();
      FootState& foot = state.feet[i];
      const Vec3 world = state.position + tip;  // identity orientation
      if (initial[i].mode == LegMode::kStance && world.z() <= 1e-12) {
        foot.in_contact = true;
        foot.anchor = world.head<2>();
        foot.penetration = std::max(0.0, -world.z());
      } else {
        foot.in_contact = false;
        foot.penetration = 0.0;
      }
    }
  }

  for (long t = 0; t < ticks; ++t) {
    const LegCommands commands = controller.tick(state, gait_state);
    result.log.rows.push_back(
        make_log_row(state, commands, gait_state.global_phase));
    try {
      for (int s = 0; s < params.substeps; ++s)
        step(model, state, commands, params, dt_phys);
    } catch (const DivergenceError& e) {
      result.diverged = true;
      result.divergence_reason = e.what();
      break;
    }
    if (step_frequency > 0.0)
      gait_state = advance(gait_state, gait, step_frequency, dt_ctrl);
  }
  return result;
}

void write_episode_csv(const EpisodeLog& log, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path + " for writing");
  char buf[192];
  const EpisodeMeta& m = log.meta;
  out << "# hexctl-episode-v1 name=" << m.name << " gait=" << m.gait;
  std::snprintf(buf, sizeof(buf), " vx=%.12g vy=%.12g wz=%.12g", m.command.vx,
                m.command.vy, m.command.wz);
  out << buf;
  std::snprintf(buf, sizeof(buf), " f=%.12g duration=%.12g rate=%.12g seed=%llu",
                m.step_frequency, m.duration, m.control_rate,
                static_cast<unsigned long long>(m.seed));
  out << buf << "\n";
  const auto& columns = episode_columns();
  for (size_t i = 0; i < columns.size(); ++i)
    out << (i ? "," : "") << columns[i];
  out << "\n";
  for (const auto& row : log.rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      std::snprintf(buf, sizeof(buf), "%.12g", row[i]);
      out << (i ? "," : "") << buf;
    }
    out << "\n";
  }
}

namespace {

double meta_field(const std::string& header, const std::string& key,
                  double fallback) {
  const std::string token = " " + key + "=";
  size_t pos = header.find(token);
  if (pos == std::string::npos) return fallback;
  return std::strtod(header.c_str() + pos + token.size(), nullptr);
}

std::string meta_string(const std::string& header, const std::string& key,
                        const std::string& fallback) {
  const std::string token = " " + key + "=";
  size_t pos = header.find(token);
  if (pos == std::string::npos) return fallback;
  size_t start = pos + token.size();
  size_t end = header.find(' ', start);
  return header.substr(start, end == std::string::npos ? end : end - start);
}

}  // namespace

EpisodeLog read_episode_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  EpisodeLog log;
  std::string line;
  long lineno = 0;

  if (!std::getline(in, line)) throw LogFormatError("empty file");
  ++lineno;
  if (line.rfind("# hexctl-episode-v1", 0) != 0)
    throw LogFormatError("missing episode header", lineno);
  log.meta.name = meta_string(line, "name", "episode");
  log.meta.gait = meta_string(line, "gait", "");
  log.meta.command.vx = meta_field(line, "vx", 0.0);
  log.meta.command.vy = meta_field(line, "vy", 0.0);
  log.meta.command.wz = meta_field(line, "wz", 0.0);
  log.meta.step_frequency = meta_field(line, "f", 0.0);
  log.meta.duration = meta_field(line, "duration", 0.0);
  log.meta.control_rate = meta_field(line, "rate", 800.0);
  log.meta.seed =
      static_cast<std::uint64_t>(meta_field(line, "seed", 0.0));

  if (!std::getline(in, line)) throw LogFormatError("missing column header");
  ++lineno;
  {
    std::stringstream ss(line);
    std::string name;
    size_t count = 0;
    const auto& columns = episode_columns();
    while (std::getline(ss, name, ',')) {
      if (count >= columns.size() || name != columns[count])
        throw LogFormatError("unexpected column \"" + name + "\" at index " +
                                 std::to_string(count),
                             lineno);
      ++count;
    }
    if (count != columns.size())
      throw LogFormatError("expected " + std::to_string(columns.size()) +
                               " columns, got " + std::to_string(count),
                           lineno);
  }

  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::array<double, 93> row{};
    std::stringstream ss(line);
    std::string cell;
    size_t count = 0;
    while (std::getline(ss, cell, ',')) {
      if (count >= row.size())
        throw LogFormatError("too many cells", lineno);
      char* end = nullptr;
      row[count] = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str())
        throw LogFormatError("cell \"" + cell + "\" is not a number", lineno);
      ++count;
    }
    if (count != row.size())
      throw LogFormatError("expected " + std::to_string(row.size()) +
                               " cells, got " + std::to_string(count),
                           lineno);
    log.rows.push_back(row);
  }
  return log;
}

}  // namespace hexctl
