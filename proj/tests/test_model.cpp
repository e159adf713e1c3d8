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

#include <random>

#include "hexctl/errors.hpp"
#include "hexctl/model.hpp"

using namespace hexctl;

TEST_CASE("default model reproduces the design datasheet exactly") {
  RobotModel m = default_model();
  CHECK(m.body.length == 1.0);
  CHECK(m.body.width == 1.08);
  CHECK(m.body.stance_height == 0.55);
  CHECK(m.body.mass == 50.5);
  CHECK(m.body.hip_spacing == 0.3);
  for (const LegModel& leg : m.legs) {
    CHECK(leg.l_coxa == 0.065);
    CHECK(leg.l_femur == 0.275);
    CHECK(leg.l_tibia == 0.365);
    CHECK(leg.joint_limits[0].lo == -0.9);
    CHECK(leg.joint_limits[0].hi == 0.9);
    CHECK(leg.joint_limits[1].lo == -1.1);
    CHECK(leg.joint_limits[1].hi == 0.6);
    CHECK(leg.joint_limits[2].lo == 0.4);
    CHECK(leg.joint_limits[2].hi == 2.4);
  }
  CHECK(m.envelope.peak_torque == Vec3(80, 112, 80));
  CHECK(m.envelope.continuous_torque == Vec3(21, 30, 21));
  CHECK(m.envelope.max_speed == Vec3(8, 11, 8));
  CHECK(m.workspace_length == 0.5);
}

TEST_CASE("legs stay light relative to the body") {
  RobotModel m = default_model();
  double leg_mass = 0;
  for (const LegModel& leg : m.legs) leg_mass += leg.link_masses.sum();
  CHECK(leg_mass == doctest::Approx(0.15 * m.body.mass).epsilon(1e-12));
}

TEST_CASE("empty overrides give the defaults") {
  RobotModel m = load_model("");
  CHECK(m.legs[0].l_femur == 0.275);
}

TEST_CASE("inverted limit interval is a validation error") {
  CHECK_THROWS_AS(load_model("leg.q3_limits = 2.5 0.4\n"), ValidationError);
}

TEST_CASE("peak below continuous torque is a validation error") {
  CHECK_THROWS_AS(load_model("envelope.peak_torque = 80 20 80\n"),
                  ValidationError);
}

TEST_CASE("workspace must respect the leg-collision buffer") {
  CHECK_THROWS_AS(load_model("workspace.length = 0.55\n"), ValidationError);
  CHECK_NOTHROW(load_model("workspace.length = 0.5\n"));
}

TEST_CASE("serialize round-trips to an equal model") {
  RobotModel m = load_model("body.mass = 48.25\nleg.l_tibia = 0.37\n");
  RobotModel again = load_model(serialize_model(m));
  CHECK(again.body.mass == m.body.mass);
  CHECK(again.legs[0].l_tibia == m.legs[0].l_tibia);
  CHECK(serialize_model(again) == serialize_model(m));
}

TEST_CASE("max kinematic speed formula") {
  RobotModel m = default_model();
  CHECK(max_kinematic_speed(m, 0.5, 1.4) == 1.4);
  CHECK(max_kinematic_speed(m, 0.5, 1.0) == 1.0);

  // Linear in frequency and workspace, inverse in duty factor.
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit(0.1, 0.9);
  for (int k = 0; k < 200; ++k) {
    double duty = unit(rng);
    double f = 3.0 * unit(rng);
    double v = max_kinematic_speed(m, duty, f);
    CHECK(max_kinematic_speed(m, duty, 2.0 * f) ==
          doctest::Approx(2.0 * v).epsilon(1e-12));
    CHECK(max_kinematic_speed(m, duty / 2.0, f) ==
          doctest::Approx(2.0 * v).epsilon(1e-12));
    RobotModel wide = m;
    wide.workspace_length = m.workspace_length * 1.2;
    CHECK(max_kinematic_speed(wide, duty, f) ==
          doctest::Approx(1.2 * v).epsilon(1e-12));
  }

  CHECK_THROWS_AS(max_kinematic_speed(m, 0.0, 1.0), ValidationError);
  CHECK_THROWS_AS(max_kinematic_speed(m, 1.0, 1.0), ValidationError);
  CHECK_THROWS_AS(max_kinematic_speed(m, 0.5, 0.0), ValidationError);
}

TEST_CASE("mount poses mirror about the sagittal plane") {
  RobotModel m = default_model();
  for (int i = 0; i < kNumLegs; i += 2) {
    Vec3 left = m.body.mount_poses[i].translation();
    Vec3 right = m.body.mount_poses[i + 1].translation();
    CHECK(left.x() == right.x());
    CHECK(left.y() == -right.y());
  }
}

TEST_CASE("default footholds reproduce the stance width") {
  RobotModel m = default_model();
  for (LegId id : kAllLegs) {
    Vec3 f = default_foothold(m, id);
    CHECK(std::abs(f.y()) == doctest::Approx(m.body.width / 2.0));
    CHECK(f.z() == -m.body.stance_height);
  }
  CHECK(default_foothold(m, LegId::kFrontLeft).x() ==
        doctest::Approx(m.body.hip_spacing));
  CHECK(default_foothold(m, LegId::kMiddleRight).x() == doctest::Approx(0.0));
}

TEST_CASE("frame transforms invert each other") {
  RobotModel m = default_model();
  Vec3 p(0.3, 0.5, -0.5);
  for (LegId id : kAllLegs) {
    Vec3 back = leg_to_body_point(m, id, body_to_leg_point(m, id, p));
    CHECK((back - p).norm() < 1e-14);
  }
}
