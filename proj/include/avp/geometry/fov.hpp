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

#ifndef AVP__GEOMETRY__FOV_HPP_
#define AVP__GEOMETRY__FOV_HPP_

#include <Eigen/Core>

#include "avp/geometry/pose.hpp"

namespace avp::geometry
{

/// Rectangular sensing field of view, forward-shifted from the ego pose.
/// Distances are measured in a scaled infinity norm so that the level set
/// d = 1 is the r_x by r_y rectangle centered `zeta` ahead of the ego.
struct FovParams
{
  double r_x{12.425};
  double r_y{5.58};
  double zeta{2.485};
  double eps{1.0};
  double gamma{1.5};
};

enum class ViewClass { Full, Partial, Unobserved };

/// Scaled-and-shifted infinity-norm distance from the FoV center to `s`.
inline double scaled_shifted_distance(
  const Pose2d & ego, const Eigen::Vector2d & s, const FovParams & fov)
{
  const Eigen::Vector2d center = from_frame(ego, {fov.zeta, 0.0});
  const Eigen::Vector2d local = rotation_matrix(ego.theta).transpose() * (s - center);
  return std::max(std::abs(local.x()) / fov.r_x, std::abs(local.y()) / fov.r_y);
}

/// d <= eps is fully visible, d >= gamma is unobserved, in between is partial.
inline ViewClass classify_view(double d, const FovParams & fov)
{
  if (d <= fov.eps) {
    return ViewClass::Full;
  }
  if (d >= fov.gamma) {
    return ViewClass::Unobserved;
  }
  return ViewClass::Partial;
}

inline ViewClass classify_view(
  const Pose2d & ego, const Eigen::Vector2d & s, const FovParams & fov)
{
  return classify_view(scaled_shifted_distance(ego, s, fov), fov);
}

}  // namespace avp::geometry

#endif  // AVP__GEOMETRY__FOV_HPP_
