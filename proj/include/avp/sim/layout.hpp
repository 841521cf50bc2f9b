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

#ifndef AVP__SIM__LAYOUT_HPP_
#define AVP__SIM__LAYOUT_HPP_

#include "avp/geometry/footprint.hpp"
#include "avp/geometry/pose.hpp"
#include "avp/geometry/spot.hpp"

#include <Eigen/Core>

#include <optional>
#include <vector>

namespace avp::sim
{

struct LotParams
{
  int rows{8};
  int cols{12};
  double spot_length{6.1};
  double spot_width{2.74};
  double road_width{7.62};
  double boundary_spacing{0.25};
};

/// Rectangular lot: `rows` rows of `cols` spots arranged in back-to-back
/// pairs, horizontal aisles between the pairs and along the bottom and top
/// walls, and one vertical aisle along each side wall. The entrance sits in
/// the middle of the top wall.
///
/// Row r belongs to pair r/2; even rows open onto the aisle below them
/// (parked heading +pi/2), odd rows onto the aisle above (-pi/2). Spot ids
/// are row-major: id = r * cols + c.
class LotLayout
{
public:
  static LotLayout build(const LotParams & params);

  const LotParams & params() const { return params_; }
  double width() const { return width_; }
  double height() const { return height_; }
  const Eigen::Vector2d & entrance() const { return entrance_; }
  const std::vector<geometry::SpotGeom> & spots() const { return spots_; }
  const std::vector<Eigen::Vector2d> & intersections() const { return intersections_; }

  int spot_row(int spot_id) const { return spot_id / params_.cols; }
  int spot_col(int spot_id) const { return spot_id % params_.cols; }

  bool inside(const Eigen::Vector2d & p) const;

  /// True when p lies in an aisle (inside the lot and outside every
  /// spot-row block).
  bool on_road(const Eigen::Vector2d & p) const;

  /// Default ego start: centered in the top aisle at the entrance, heading
  /// along the aisle.
  geometry::Pose2d entrance_pose() const;

  /// Nose-in parked pose for `footprint` centered in the spot.
  geometry::Pose2d parked_goal(int spot_id, const geometry::Footprint & footprint) const;

  /// Perimeter walls sampled at most `boundary_spacing` apart.
  std::vector<Eigen::Vector2d> boundary_points() const;

  /// Center of the nearest aisle crossing ahead of `pose` within its own
  /// corridor, if any.
  std::optional<Eigen::Vector2d> next_intersection(const geometry::Pose2d & pose) const;

  /// Occupancy probability for a row: linear ramp from `far_p` at row 0 to
  /// `near_p` at the row closest to the entrance.
  double occupancy_probability(int row, double near_p, double far_p) const;

private:
  LotParams params_;
  double width_{0.0};
  double height_{0.0};
  Eigen::Vector2d entrance_{0.0, 0.0};
  std::vector<geometry::SpotGeom> spots_;
  std::vector<Eigen::Vector2d> intersections_;
};

}  // namespace avp::sim

#endif  // AVP__SIM__LAYOUT_HPP_
