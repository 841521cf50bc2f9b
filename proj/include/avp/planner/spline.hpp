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

#ifndef AVP__PLANNER__SPLINE_HPP_
#define AVP__PLANNER__SPLINE_HPP_

#include "avp/geometry/pose.hpp"
#include "avp/planner/trajectory.hpp"
#include "avp/planner/vehicle.hpp"

namespace avp::planner
{

/// Straight-ahead trajectory covering `distance` meters along the start
/// heading, with a quintic speed profile from `start_speed` to rest
/// (boundary velocity/acceleration continuous, zero at arrival). The profile
/// duration is the shortest multiple of dt keeping the speed within
/// [0, v_max]. Returns an empty trajectory when distance <= 0.
Trajectory straight_spline(
  const geometry::Pose2d & start, double distance, double start_speed,
  const VehicleParams & vehicle, double dt);

}  // namespace avp::planner

#endif  // AVP__PLANNER__SPLINE_HPP_
