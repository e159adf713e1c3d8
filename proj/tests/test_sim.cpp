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

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hexctl/errors.hpp"
#include "hexctl/sim.hpp"

using namespace hexctl;

namespace {

LegCommands zero_torque_commands(const RobotModel& model,
                                 const SimState& state) {
  LegCommands commands;
  for (LegId id : kAllLegs) {
    int i = leg_index(id);
    commands[i].mode = LegMode::kStance;
    commands[i].tip_body.position = state.actual_tip[i];
    commands[i].tip_leg.position =
        body_to_leg_point(model, id, state.actual_tip[i]);
    commands[i].joints.torques = Vec3::Zero();
  }
  return commands;
}

std::string slurp_file(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("zero gravity, zero torques, zero twist is a fixed point") {
  RobotModel model = default_model();
  SimParams params;
  params.gravity = 0.0;
  SimState state = initial_standing_state(model);
  // Feet in the air: an anchored foot with zero press releases by design.
  for (FootState& foot : state.feet) foot.in_contact = false;
  SimState before = state;
  LegCommands commands = zero_torque_commands(model, state);
  for (int k = 0; k < 100; ++k)
    step(model, state, commands, params, params.physics_dt());
  CHECK((state.position - before.position).norm() == 0.0);
  CHECK(state.linear_velocity.norm() == 0.0);
  CHECK(state.angular_velocity.norm() == 0.0);
  CHECK(state.orientation.coeffs() == before.orientation.coeffs());
}

TEST_CASE("free fall conserves energy to first order in dt") {
  RobotModel model = default_model();
  SimParams params;
  SimState state = initial_standing_state(model);
  state.position.z() = 5.0;  // well above ground, no contact this test
  for (FootState& foot : state.feet) foot.in_contact = false;
  LegCommands commands = zero_torque_commands(model, state);

  const double dt = params.physics_dt();
  const double m = model.body.mass;
  auto energy = [&] {
    return 0.5 * m * state.linear_velocity.squaredNorm() +
           m * params.gravity * state.position.z();
  };
  double e0 = energy();
  const int steps = 1000;
  for (int k = 0; k < steps; ++k) step(model, state, commands, params, dt);
  // Semi-implicit Euler drifts by -g^2 dt^2 / 2 per step in uniform gravity.
  double expected_drift = -0.5 * m * params.gravity * params.gravity * dt * dt *
                          steps;
  CHECK(energy() - e0 ==
        doctest::Approx(expected_drift).epsilon(1e-6));
}

TEST_CASE("dropped body settles with total normal force equal to weight") {
  RobotModel model = default_model();
  SimParams params;
  SimState state = initial_standing_state(model);
  state.position.z() += 0.001;  // dropped from 1 mm up
  for (FootState& foot : state.feet) foot.in_contact = false;

  GaitDefinition gait = tripod_gait();
  ControllerConfig config;
  Controller controller(model, gait, config, BodyVelocity{}, 0.0);
  GaitPhaseState gs = make_phase_state(0.0, gait);

  const double dt = params.physics_dt();
  for (int tick = 0; tick < 3 * 800; ++tick) {
    LegCommands commands = controller.tick(state, gs);
    for (int s = 0; s < params.substeps; ++s)
      step(model, state, commands, params, dt);
  }
  double total_normal = 0.0;
  for (const FootState& foot : state.feet) {
    CHECK(foot.in_contact);
    total_normal += foot.contact_force.z();
  }
  const double weight = model.body.mass * params.gravity;
  CHECK(std::abs(total_normal - weight) < 0.01 * weight);
  CHECK(state.linear_velocity.norm() < 0.01);
}

TEST_CASE("support comes from the controller: zero torques mean free fall") {
  RobotModel model = default_model();
  SimParams params;
  SimState state = initial_standing_state(model);
  LegCommands commands = zero_torque_commands(model, state);
  const double z0 = state.position.z();
  bool diverged = false;
  try {
    for (int k = 0; k < 800 * 4; ++k)
      step(model, state, commands, params, params.physics_dt());
  } catch (const DivergenceError&) {
    diverged = true;
  }
  CHECK((diverged || z0 - state.position.z() > 0.5));
}

TEST_CASE("standing holds the commanded pose") {
  RobotModel model = default_model();
  SimParams params;
  ControllerConfig config;
  EpisodeResult r = run_episode(model, tripod_gait(), config, BodyVelocity{},
                                0.0, 3.0, params, {});
  REQUIRE_FALSE(r.diverged);
  for (const auto& row : r.log.rows) {
    CHECK(std::abs(row[3] - model.body.stance_height) < 0.02);
    CHECK(std::hypot(row[1], row[2]) < 0.02);  // no planar drift
  }
}

TEST_CASE("episodes run exactly round(duration x rate) control ticks") {
  RobotModel model = default_model();
  SimParams params;
  ControllerConfig config;
  EpisodeResult r1 = run_episode(model, tripod_gait(), config, BodyVelocity{},
                                 0.0, 1.0, params, {});
  CHECK(r1.log.rows.size() == 800);
  EpisodeResult r2 = run_episode(model, tripod_gait(), config, BodyVelocity{},
                                 0.0, 0.5355, params, {});
  CHECK(r2.log.rows.size() == 428);
}

TEST_CASE("contact forces are never attractive during walking") {
  RobotModel model = default_model();
  SimParams params;
  ControllerConfig config;
  GaitDefinition gait = tripod_gait();
  BodyVelocity cmd{0.3, 0, 0};
  SimState state = initial_standing_state(model);
  GaitPhaseState gs = make_phase_state(0.0, gait);
  Controller controller(model, gait, config, cmd, 1.0);
  const double dt = params.physics_dt();
  for (int tick = 0; tick < 4 * 800; ++tick) {
    LegCommands commands = controller.tick(state, gs);
    for (int s = 0; s < params.substeps; ++s) {
      step(model, state, commands, params, dt);
      for (const FootState& foot : state.feet)
        REQUIRE(foot.contact_force.z() >= 0.0);
    }
    gs = advance(gs, gait, 1.0, 1.0 / params.control_rate);
  }
}

TEST_CASE("quaternion stays normalized through an episode") {
  RobotModel model = default_model();
  SimParams params;
  ControllerConfig config;
  EpisodeResult r = run_episode(model, tripod_gait(), config,
                                BodyVelocity{0.3, 0, 0}, 1.0, 4.0, params, {});
  REQUIRE_FALSE(r.diverged);
  for (const auto& row : r.log.rows) {
    double n = row[4] * row[4] + row[5] * row[5] + row[6] * row[6] +
               row[7] * row[7];
    CHECK(std::abs(n - 1.0) < 1e-12);
  }
}

TEST_CASE("walking tracks the commanded speed") {
  RobotModel model = default_model();
  SimParams params;
  ControllerConfig config;
  EpisodeResult r = run_episode(model, tripod_gait(), config,
                                BodyVelocity{0.3, 0, 0}, 1.0, 8.0, params, {});
  REQUIRE_FALSE(r.diverged);
  double vx_sum = 0.0;
  size_t n0 = r.log.rows.size() / 2;
  for (size_t k = n0; k < r.log.rows.size(); ++k) vx_sum += r.log.rows[k][8];
  double mean_vx = vx_sum / (r.log.rows.size() - n0);
  CHECK(mean_vx > 0.24);
  CHECK(mean_vx < 0.36);
}

TEST_CASE("identical runs are bit-identical, files byte-identical") {
  RobotModel model = default_model();
  SimParams params;
  ControllerConfig config;
  BodyVelocity cmd{0.3, 0, 0};
  EpisodeResult a = run_episode(model, tripod_gait(), config, cmd, 1.0, 2.0,
                                params, {});
  EpisodeResult b = run_episode(model, tripod_gait(), config, cmd, 1.0, 2.0,
                                params, {});
  REQUIRE(a.log.rows.size() == b.log.rows.size());
  for (size_t k = 0; k < a.log.rows.size(); ++k)
    REQUIRE(a.log.rows[k] == b.log.rows[k]);

  auto dir = std::filesystem::temp_directory_path() / "hexctl_det_test";
  std::filesystem::create_directories(dir);
  write_episode_csv(a.log, (dir / "a.csv").string());
  write_episode_csv(b.log, (dir / "b.csv").string());
  CHECK(slurp_file((dir / "a.csv").string()) ==
        slurp_file((dir / "b.csv").string()));
}

TEST_CASE("episode log survives a csv round trip") {
  RobotModel model = default_model();
  SimParams params;
  ControllerConfig config;
  EpisodeMeta meta;
  meta.name = "roundtrip";
  meta.seed = 99;
  EpisodeResult r = run_episode(model, tripod_gait(), config,
                                BodyVelocity{0.2, 0, 0}, 1.0, 0.5, params, meta);
  auto dir = std::filesystem::temp_directory_path() / "hexctl_log_test";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "ep.csv").string();
  write_episode_csv(r.log, path);
  EpisodeLog back = read_episode_csv(path);
  CHECK(back.meta.name == "roundtrip");
  CHECK(back.meta.seed == 99);
  CHECK(back.meta.command.vx == 0.2);
  CHECK(back.meta.step_frequency == 1.0);
  REQUIRE(back.rows.size() == r.log.rows.size());
  for (size_t k = 0; k < back.rows.size(); ++k)
    for (size_t c = 0; c < back.rows[k].size(); ++c)
      CHECK(back.rows[k][c] ==
            doctest::Approx(r.log.rows[k][c]).epsilon(1e-9));
}

TEST_CASE("malformed logs are rejected with a row number") {
  auto dir = std::filesystem::temp_directory_path() / "hexctl_badlog_test";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "bad.csv").string();

  {
    std::ofstream out(path);
    out << "# hexctl-episode-v1 name=x gait=tripod\n";
    const auto& cols = episode_columns();
    for (size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
    out << "\n";
    out << "1,2,3\n";  // short row
  }
  try {
    read_episode_csv(path);
    FAIL("expected LogFormatError");
  } catch (const LogFormatError& e) {
    CHECK(e.row == 3);
  }
}
