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

#ifndef AVP__GEOMETRY__FOOTPRINT_HPP_
#define AVP__GEOMETRY__FOOTPRINT_HPP_

#include <Eigen/Core>

#include "avp/geometry/pose.hpp"

#include <array>

namespace avp::geometry
{

/// Rectangular body footprint. The pose it is evaluated at may anchor the
/// rectangle at its geometric center or at the rear axle; `center_offset` is
/// the signed longitudinal distance from the anchor to the rectangle center.
struct Footprint
{
  double length{0.0};
  double width{0.0};
  double center_offset{0.0};

  static Footprint centered(double length, double width)
  {
    return Footprint{length, width, 0.0};
  }

  /// Anchor at the rear axle with equal front/rear overhangs.
  static Footprint rear_axle(double length, double width, double wheelbase)
  {
    return Footprint{length, width, 0.5 * wheelbase};
  }

  Eigen::Vector2d center(const Pose2d & pose) const
  {
    return from_frame(pose, {center_offset, 0.0});
  }

  /// Corners in counter-clockwise order starting front-left.
  std::array<Eigen::Vector2d, 4> corners(const Pose2d & pose) const
  {
    const double hl = 0.5 * length;
    const double hw = 0.5 * width;
    return {
      from_frame(pose, {center_offset + hl, hw}),
      from_frame(pose, {center_offset - hl, hw}),
      from_frame(pose, {center_offset - hl, -hw}),
      from_frame(pose, {center_offset + hl, -hw}),
    };
  }
};

/// Five-disc cover of a rectangular footprint: centers on the long axis at
/// fractions 1/10, 3/10, 5/10, 7/10, 9/10 of the length, common radius
/// sqrt((length/10)^2 + (width/2)^2). The union contains the rectangle, so
/// disc-based separation never exceeds the exact one; the gap is bounded by
/// radius - min(length/10, width/2) per body.
struct CircleCover
{
  std::array<Eigen::Vector2d, 5> centers;
  double radius{0.0};
};

CircleCover circle_cover(const Pose2d & pose, const Footprint & footprint);

/// Exact Euclidean distance from point `w` to the solid rectangle (0 inside).
double point_to_footprint_distance(
  const Eigen::Vector2d & w, const Pose2d & pose, const Footprint & footprint);

/// Exact rectangle-to-rectangle distance (0 when overlapping).
double footprint_to_footprint_distance(
  const Pose2d & pose_a, const Footprint & fp_a, const Pose2d & pose_b, const Footprint & fp_b);

bool footprints_overlap(
  const Pose2d & pose_a, const Footprint & fp_a, const Pose2d & pose_b, const Footprint & fp_b);

/// Conservative vehicle separation: min over disc pairs of the five-disc
/// covers. Symmetric in its arguments; <= the exact separation, and never
/// positive when the rectangles overlap.
double circle_cover_distance(
  const Pose2d & pose_a, const Footprint & fp_a, const Pose2d & pose_b, const Footprint & fp_b);

/// Five-disc cover against a single disc (pedestrians).
double circle_cover_to_disc_distance(
  const Pose2d & pose, const Footprint & footprint, const Eigen::Vector2d & center, double radius);

}  // namespace avp::geometry

#endif  // AVP__GEOMETRY__FOOTPRINT_HPP_
