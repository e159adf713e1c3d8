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
#include <Eigen/Core>
#include <Eigen/Geometry>

namespace hexctl {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;

inline constexpr double kGravity = 9.81;  // m/s^2

// Leg indexing is fixed library-wide: arrays, CSV columns and config keys all
// follow this order. Even indices are left legs, odd are right legs.
enum class LegId : int {
  kFrontLeft = 0,
  kFrontRight = 1,
  kMiddleLeft = 2,
  kMiddleRight = 3,
  kRearLeft = 4,
  kRearRight = 5,
};

inline constexpr int kNumLegs = 6;

inline constexpr std::array<const char*, kNumLegs> kLegNames = {
    "front_left", "front_right", "middle_left",
    "middle_right", "rear_left", "rear_right"};

inline constexpr std::array<const char*, kNumLegs> kLegShortNames = {
    "fl", "fr", "ml", "mr", "rl", "rr"};

inline constexpr std::array<const char*, 3> kJointNames = {"coxa", "femur",
                                                           "tibia"};

inline constexpr int leg_index(LegId id) { return static_cast<int>(id); }
inline constexpr bool is_left_leg(LegId id) { return leg_index(id) % 2 == 0; }

inline constexpr std::array<LegId, kNumLegs> kAllLegs = {
    LegId::kFrontLeft,  LegId::kFrontRight, LegId::kMiddleLeft,
    LegId::kMiddleRight, LegId::kRearLeft,   LegId::kRearRight};

// Commanded planar body motion: forward/lateral velocity plus yaw rate,
// expressed in the body frame (x forward, y left, z up).
struct BodyVelocity {
  double vx = 0.0;  // m/s
  double vy = 0.0;  // m/s
  double wz = 0.0;  // rad/s
};

}  // namespace hexctl
