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

#include "avp/planner/collision.hpp"

#include <algorithm>
#include <cmath>

namespace avp::planner
{

double static_clearance(
  const geometry::Pose2d & pose, const geometry::Footprint & fp, const sim::StaticIndex & statics,
  double cap)
{
  if (statics.points().empty()) {
    return cap;
  }
  const Eigen::Vector2d center = fp.center(pose);
  const double half_diag = 0.5 * std::hypot(fp.length, fp.width);
  // The nearest point to the rectangle lies within nearest-center-distance
  // of the center, so query that radius and refine exactly.
  const double center_nearest = statics.nearest_distance(center, cap + half_diag);
  double best = cap;
  statics.for_each_in_radius(
    center, center_nearest + half_diag + 1e-9, [&](const Eigen::Vector2d & p) {
      best = std::min(best, geometry::point_to_footprint_distance(p, pose, fp));
    });
  return best;
}

bool has_static_clearance(
  const geometry::Pose2d & pose, const geometry::Footprint & fp, const sim::StaticIndex & statics,
  double min_clearance)
{
  if (statics.points().empty()) {
    return true;
  }
  const geometry::CircleCover cover = geometry::circle_cover(pose, fp);
  double lower = 1e9;
  double upper = 1e9;
  for (const auto & c : cover.centers) {
    lower = std::min(lower, statics.distance_lower_bound(c));
    upper = std::min(upper, statics.distance_upper_bound(c));
  }
  // The cover contains the rectangle: clearance >= min center bound - radius.
  if (lower - cover.radius >= min_clearance) {
    return true;
  }
  // Centers lie inside the rectangle: clearance <= distance from any center.
  if (upper < min_clearance) {
    return false;
  }
  return static_clearance(pose, fp, statics, min_clearance + 1.0) >= min_clearance;
}

}  // namespace avp::planner
