// Copyright 2026 The avp Authors
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

#ifndef AVP__PLANNER__VEHICLE_HPP_
#define AVP__PLANNER__VEHICLE_HPP_

#include "avp/geometry/footprint.hpp"
#include "avp/geometry/pose.hpp"

#include <cmath>

namespace avp::planner
{

struct VehicleParams
{
  double length{4.97};
  double width{1.86};
  double wheelbase{2.83};
  double v_max{3.5};
  double delta_max{0.609};  // 34.9 deg

  geometry::Footprint footprint() const
  {
    return geometry::Footprint::rear_axle(length, width, wheelbase);
  }
};

/// One RK4 step of the kinematic bicycle model with controls held constant:
///   x' = v cos(theta), y' = v sin(theta), theta' = v tan(delta) / L
/// The pose is anchored at the rear axle.
inline geometry::Pose2d bicycle_step(
  const geometry::Pose2d & state, double v, double delta, double dt, const VehicleParams & vp)
{
  const double omega = v * std::tan(delta) / vp.wheelbase;

  const auto eval = [v](double theta) {
    return Eigen::Vector3d{v * std::cos(theta), v * std::sin(theta), 0.0};
  };

  Eigen::Vector3d k1 = eval(state.theta);
  k1.z() = omega;
  Eigen::Vector3d k2 = eval(state.theta + 0.5 * dt * k1.z());
  k2.z() = omega;
  Eigen::Vector3d k3 = eval(state.theta + 0.5 * dt * k2.z());
  k3.z() = omega;
  Eigen::Vector3d k4 = eval(state.theta + dt * k3.z());
  k4.z() = omega;

  const Eigen::Vector3d delta_state = (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  return geometry::Pose2d{
    state.x + delta_state.x(), state.y + delta_state.y(),
    geometry::normalize_angle(state.theta + delta_state.z())};
}

}  // namespace avp::planner

#endif  // AVP__PLANNER__VEHICLE_HPP_
