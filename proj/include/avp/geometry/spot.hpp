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

#ifndef AVP__GEOMETRY__SPOT_HPP_
#define AVP__GEOMETRY__SPOT_HPP_

#include <Eigen/Core>

#include "avp/geometry/footprint.hpp"
#include "avp/geometry/pose.hpp"

namespace avp::geometry
{

/// Parking spot rectangle. `heading` points along the long axis in the
/// drive-in direction (from the adjoining aisle into the spot).
struct SpotGeom
{
  int id{0};
  Eigen::Vector2d center{0.0, 0.0};
  double heading{0.0};
  double length{6.1};
  double width{2.74};

  Pose2d frame() const { return Pose2d{center.x(), center.y(), heading}; }

  bool contains(const Eigen::Vector2d & p, double inflate = 0.0) const
  {
    const Eigen::Vector2d local = to_frame(frame(), p);
    return std::abs(local.x()) <= 0.5 * length + inflate &&
           std::abs(local.y()) <= 0.5 * width + inflate;
  }

  /// Pose that centers `fp` in the spot, facing the drive-in direction.
  Pose2d parked_pose(const Footprint & fp) const
  {
    const Eigen::Vector2d anchor = from_frame(frame(), {-fp.center_offset, 0.0});
    return Pose2d{anchor.x(), anchor.y(), heading};
  }

  bool footprint_inside(const Pose2d & pose, const Footprint & fp, double slack = 0.0) const
  {
    for (const auto & corner : fp.corners(pose)) {
      const Eigen::Vector2d local = to_frame(frame(), corner);
      if (
        std::abs(local.x()) > 0.5 * length + slack ||
        std::abs(local.y()) > 0.5 * width + slack) {
        return false;
      }
    }
    return true;
  }
};

}  // namespace avp::geometry

#endif  // AVP__GEOMETRY__SPOT_HPP_
