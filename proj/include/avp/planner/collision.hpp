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

#ifndef AVP__PLANNER__COLLISION_HPP_
#define AVP__PLANNER__COLLISION_HPP_

#include "avp/geometry/footprint.hpp"
#include "avp/geometry/pose.hpp"
#include "avp/sim/static_index.hpp"

namespace avp::planner
{

/// Exact distance from the footprint edge to the nearest static obstacle
/// point, capped at `cap`.
double static_clearance(
  const geometry::Pose2d & pose, const geometry::Footprint & fp, const sim::StaticIndex & statics,
  double cap = 1e9);

/// Whether the footprint keeps at least `min_clearance` to all static points.
/// Uses the conservative distance-grid bounds and falls back to exact
/// point queries only in the uncertain band.
bool has_static_clearance(
  const geometry::Pose2d & pose, const geometry::Footprint & fp, const sim::StaticIndex & statics,
  double min_clearance);

}  // namespace avp::planner

#endif  // AVP__PLANNER__COLLISION_HPP_
