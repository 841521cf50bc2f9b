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

#include "avp/planner/spline.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace avp::planner
{
namespace
{

struct Quintic
{
  // s(u) = a1 u + a3 u^3 + a4 u^4 + a5 u^5 (a0 = a2 = 0 by construction).
  double a1, a3, a4, a5;

  double value(double u) const { return u * (a1 + u * u * (a3 + u * (a4 + u * a5))); }
  double rate(double u) const
  {
    return a1 + u * u * (3.0 * a3 + u * (4.0 * a4 + u * 5.0 * a5));
  }
};

Quintic solve_profile(double distance, double start_speed, double duration)
{
  const double tf = duration;
  Eigen::Matrix3d lhs;
  lhs << tf * tf * tf, tf * tf * tf * tf, tf * tf * tf * tf * tf,
    3.0 * tf * tf, 4.0 * tf * tf * tf, 5.0 * tf * tf * tf * tf,
    6.0 * tf, 12.0 * tf * tf, 20.0 * tf * tf * tf;
  Eigen::Vector3d rhs;
  rhs << distance - start_speed * tf, -start_speed, 0.0;
  const Eigen::Vector3d sol = lhs.fullPivLu().solve(rhs);
  return {start_speed, sol(0), sol(1), sol(2)};
}

bool profile_valid(const Quintic & q, double duration, double dt, double v_max)
{
  for (double u = 0.0; u <= duration + 0.5 * dt; u += dt) {
    const double v = q.rate(std::min(u, duration));
    if (v < -1e-9 || v > v_max + 1e-9) {
      return false;
    }
  }
  return true;
}

}  // namespace

Trajectory straight_spline(
  const geometry::Pose2d & start, double distance, double start_speed,
  const VehicleParams & vehicle, double dt)
{
  Trajectory trajectory;
  trajectory.kind = TrajectoryKind::ToExplorationGoal;
  if (distance <= 0.0) {
    return trajectory;
  }

  const double v0 = std::clamp(start_speed, 0.0, vehicle.v_max);
  // Minimum-jerk rest-to-rest peak speed is 1.875 d / tf, a lower bound for
  // the scan.
  int steps = std::max(1, static_cast<int>(std::ceil(1.875 * distance / vehicle.v_max / dt)));
  Quintic profile{};
  const int max_steps = steps + 4000;
  for (; steps <= max_steps; ++steps) {
    profile = solve_profile(distance, v0, steps * dt);
    if (profile_valid(profile, steps * dt, dt, vehicle.v_max)) {
      break;
    }
  }

  const Eigen::Vector2d dir = start.heading_vector();
  std::vector<double> s(static_cast<std::size_t>(steps) + 1);
  for (int k = 0; k <= steps; ++k) {
    s[static_cast<std::size_t>(k)] = std::clamp(profile.value(k * dt), 0.0, distance);
  }
  s.back() = distance;

  trajectory.states.reserve(s.size());
  for (int k = 0; k <= steps; ++k) {
    const Eigen::Vector2d p = start.position() + s[static_cast<std::size_t>(k)] * dir;
    double v = 0.0;
    if (k < steps) {
      v = (s[static_cast<std::size_t>(k) + 1] - s[static_cast<std::size_t>(k)]) / dt;
    }
    trajectory.states.push_back({{p.x(), p.y(), start.theta}, v, 0.0});
  }
  return trajectory;
}

}  // namespace avp::planner
