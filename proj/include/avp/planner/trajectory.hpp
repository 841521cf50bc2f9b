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

#ifndef AVP__PLANNER__TRAJECTORY_HPP_
#define AVP__PLANNER__TRAJECTORY_HPP_

#include "avp/geometry/pose.hpp"

#include <vector>

namespace avp::planner
{

/// One time-discretized trajectory sample. The controls (v, delta) are held
/// over the step leading from this state to the next; the final sample
/// carries zero controls.
struct TrajectoryState
{
  geometry::Pose2d pose;
  double v{0.0};
  double delta{0.0};
};

enum class TrajectoryKind { ToSpot, ToExplorationGoal };

struct Trajectory
{
  std::vector<TrajectoryState> states;
  TrajectoryKind kind{TrajectoryKind::ToSpot};

  bool empty() const { return states.empty(); }
  /// Number of steps N_g (states.size() - 1 when non-empty).
  int steps() const { return states.empty() ? 0 : static_cast<int>(states.size()) - 1; }

  double path_length() const
  {
    double length = 0.0;
    for (std::size_t i = 1; i < states.size(); ++i) {
      length += (states[i].pose.position() - states[i - 1].pose.position()).norm();
    }
    return length;
  }

  /// Drops the first state; the caller executed its control.
  void pop_front() { states.erase(states.begin()); }
};

}  // namespace avp::planner

#endif  // AVP__PLANNER__TRAJECTORY_HPP_
