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

#ifndef AVP__PLANNER__HYBRID_ASTAR_HPP_
#define AVP__PLANNER__HYBRID_ASTAR_HPP_

#include "avp/geometry/pose.hpp"
#include "avp/planner/trajectory.hpp"
#include "avp/planner/vehicle.hpp"
#include "avp/sim/static_index.hpp"

#include <cstddef>
#include <stdexcept>

namespace avp::planner
{

struct StartInCollision : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

struct GridParams
{
  double xy_resolution{0.2};
  double heading_resolution{10.0 * M_PI / 180.0};
  int steering_samples{5};
  int velocity_samples{5};
  /// Simulation steps of dt per expansion; > 1 trades optimality for speed.
  int primitive_steps{1};
  double dt{0.1};
  std::size_t max_nodes{60000};
  double goal_position_tolerance{0.2};
  double goal_heading_tolerance{10.0 * M_PI / 180.0};
  double min_static_clearance{0.2};
  /// Extra cost per reverse step and per gear change, in step units. These
  /// shape maneuver quality; the reported trajectory cost stays time-based.
  double reverse_penalty{0.5};
  double gear_change_penalty{8.0};
  double heuristic_weight{1.0};
};

struct SearchResult
{
  bool feasible{false};
  Trajectory trajectory;
  std::size_t expanded{0};
};

/// Hybrid A* over (x, y, theta) with bicycle-model motion primitives and
/// static-obstacle clearance checks at every simulated substep.
/// `allow_opposite_heading` accepts arrival at goal heading + pi (parking
/// spots can be entered nose-in or backed in).
///
/// Throws StartInCollision when the start pose violates the clearance
/// requirement; an unreachable or blocked goal yields feasible = false.
SearchResult hybrid_astar(
  const geometry::Pose2d & start, const geometry::Pose2d & goal, bool allow_opposite_heading,
  const VehicleParams & vehicle, const sim::StaticIndex & statics, const GridParams & grid);

}  // namespace avp::planner

#endif  // AVP__PLANNER__HYBRID_ASTAR_HPP_
