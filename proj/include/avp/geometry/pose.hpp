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

#ifndef AVP__GEOMETRY__POSE_HPP_
#define AVP__GEOMETRY__POSE_HPP_

#include <Eigen/Core>

#include <cmath>

namespace avp::geometry
{

struct Pose2d
{
  double x{0.0};
  double y{0.0};
  double theta{0.0};

  Eigen::Vector2d position() const { return {x, y}; }
  Eigen::Vector2d heading_vector() const { return {std::cos(theta), std::sin(theta)}; }
};

/// Maps an angle into (-pi, pi]. Idempotent.
inline double normalize_angle(double angle)
{
  constexpr double two_pi = 2.0 * M_PI;
  double a = std::fmod(angle + M_PI, two_pi);
  if (a <= 0.0) {
    a += two_pi;
  }
  return a - M_PI;
}

inline double angle_difference(double a, double b) { return normalize_angle(a - b); }

inline Eigen::Matrix2d rotation_matrix(double theta)
{
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  Eigen::Matrix2d r;
  r << c, -s, s, c;
  return r;
}

/// World point expressed in the frame of `frame`.
inline Eigen::Vector2d to_frame(const Pose2d & frame, const Eigen::Vector2d & p_world)
{
  return rotation_matrix(frame.theta).transpose() * (p_world - frame.position());
}

/// Frame-local point expressed in world coordinates.
inline Eigen::Vector2d from_frame(const Pose2d & frame, const Eigen::Vector2d & p_local)
{
  return frame.position() + rotation_matrix(frame.theta) * p_local;
}

/// Cosine distance 1 - cos(angle between v1 and v2), in [0, 2].
/// Either vector being (near) zero yields 0 by convention so that standstill
/// trajectory samples do not generate direction penalties.
inline double cosine_distance(const Eigen::Vector2d & v1, const Eigen::Vector2d & v2)
{
  constexpr double kMinNorm = 1e-9;
  const double n1 = v1.norm();
  const double n2 = v2.norm();
  if (n1 < kMinNorm || n2 < kMinNorm) {
    return 0.0;
  }
  return 1.0 - v1.dot(v2) / (n1 * n2);
}

}  // namespace avp::geometry

#endif  // AVP__GEOMETRY__POSE_HPP_
