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

#include "avp/geometry/footprint.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace avp::geometry
{
namespace
{

double segment_to_segment_distance(
  const Eigen::Vector2d & a0, const Eigen::Vector2d & a1, const Eigen::Vector2d & b0,
  const Eigen::Vector2d & b1)
{
  const auto point_to_segment = [](
                                  const Eigen::Vector2d & p, const Eigen::Vector2d & s0,
                                  const Eigen::Vector2d & s1) {
    const Eigen::Vector2d d = s1 - s0;
    const double len2 = d.squaredNorm();
    if (len2 < 1e-18) {
      return (p - s0).norm();
    }
    const double t = std::clamp((p - s0).dot(d) / len2, 0.0, 1.0);
    return (p - (s0 + t * d)).norm();
  };

  const auto segments_intersect = [](
                                    const Eigen::Vector2d & p0, const Eigen::Vector2d & p1,
                                    const Eigen::Vector2d & q0, const Eigen::Vector2d & q1) {
    const auto cross = [](const Eigen::Vector2d & u, const Eigen::Vector2d & v) {
      return u.x() * v.y() - u.y() * v.x();
    };
    const double d1 = cross(q1 - q0, p0 - q0);
    const double d2 = cross(q1 - q0, p1 - q0);
    const double d3 = cross(p1 - p0, q0 - p0);
    const double d4 = cross(p1 - p0, q1 - p0);
    return ((d1 > 0.0) != (d2 > 0.0)) && ((d3 > 0.0) != (d4 > 0.0));
  };

  if (segments_intersect(a0, a1, b0, b1)) {
    return 0.0;
  }
  return std::min(
    std::min(point_to_segment(a0, b0, b1), point_to_segment(a1, b0, b1)),
    std::min(point_to_segment(b0, a0, a1), point_to_segment(b1, a0, a1)));
}

bool point_inside_footprint(
  const Eigen::Vector2d & w, const Pose2d & pose, const Footprint & fp)
{
  const Eigen::Vector2d local = to_frame(pose, w);
  return std::abs(local.x() - fp.center_offset) <= 0.5 * fp.length &&
         std::abs(local.y()) <= 0.5 * fp.width;
}

}  // namespace

CircleCover circle_cover(const Pose2d & pose, const Footprint & footprint)
{
  CircleCover cover;
  const double tenth = footprint.length / 10.0;
  cover.radius = std::hypot(tenth, 0.5 * footprint.width);
  const double rear = footprint.center_offset - 0.5 * footprint.length;
  for (int i = 0; i < 5; ++i) {
    const double along = rear + (2 * i + 1) * tenth;
    cover.centers[i] = from_frame(pose, {along, 0.0});
  }
  return cover;
}

double point_to_footprint_distance(
  const Eigen::Vector2d & w, const Pose2d & pose, const Footprint & footprint)
{
  const Eigen::Vector2d local = to_frame(pose, w);
  const double dx = std::abs(local.x() - footprint.center_offset) - 0.5 * footprint.length;
  const double dy = std::abs(local.y()) - 0.5 * footprint.width;
  if (dx <= 0.0 && dy <= 0.0) {
    return 0.0;
  }
  return std::hypot(std::max(dx, 0.0), std::max(dy, 0.0));
}

double footprint_to_footprint_distance(
  const Pose2d & pose_a, const Footprint & fp_a, const Pose2d & pose_b, const Footprint & fp_b)
{
  const auto ca = fp_a.corners(pose_a);
  const auto cb = fp_b.corners(pose_b);
  if (point_inside_footprint(cb[0], pose_a, fp_a) || point_inside_footprint(ca[0], pose_b, fp_b)) {
    return 0.0;
  }
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      best = std::min(
        best, segment_to_segment_distance(ca[i], ca[(i + 1) % 4], cb[j], cb[(j + 1) % 4]));
    }
  }
  return best;
}

bool footprints_overlap(
  const Pose2d & pose_a, const Footprint & fp_a, const Pose2d & pose_b, const Footprint & fp_b)
{
  return footprint_to_footprint_distance(pose_a, fp_a, pose_b, fp_b) <= 0.0;
}

double circle_cover_distance(
  const Pose2d & pose_a, const Footprint & fp_a, const Pose2d & pose_b, const Footprint & fp_b)
{
  const CircleCover a = circle_cover(pose_a, fp_a);
  const CircleCover b = circle_cover(pose_b, fp_b);
  double best = std::numeric_limits<double>::infinity();
  for (const auto & ca : a.centers) {
    for (const auto & cb : b.centers) {
      best = std::min(best, (ca - cb).norm());
    }
  }
  return best - a.radius - b.radius;
}

double circle_cover_to_disc_distance(
  const Pose2d & pose, const Footprint & footprint, const Eigen::Vector2d & center, double radius)
{
  const CircleCover cover = circle_cover(pose, footprint);
  double best = std::numeric_limits<double>::infinity();
  for (const auto & c : cover.centers) {
    best = std::min(best, (c - center).norm());
  }
  return best - cover.radius - radius;
}

}  // namespace avp::geometry
