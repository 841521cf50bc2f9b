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

#ifndef AVP__STRATEGY__EXPLORATION_HPP_
#define AVP__STRATEGY__EXPLORATION_HPP_

#include "avp/estimator/belief.hpp"
#include "avp/geometry/fov.hpp"
#include "avp/geometry/pose.hpp"
#include "avp/geometry/spot.hpp"
#include "avp/planner/trajectory.hpp"
#include "avp/sensing/observation.hpp"
#include "avp/sim/layout.hpp"

#include <vector>

namespace avp::strategy
{

/// Candidate viewpoint pose; index 1 goes straight, 2 turns left, 3 turns
/// right. The index doubles as the deterministic tie-break order.
struct ExplorationGoal
{
  int index{0};
  geometry::Pose2d pose;
};

/// Up to three exploration goals from the current pose.
///
/// Straight: forward by the full-observability reach r_x * eps minus eta,
/// same heading. Turns: relative to the ego frame, forward to the next
/// aisle crossing plus sigma * (lane width / 2) into the receiving lane,
/// lateral sigma * r_y * eps, heading rotated by sigma * pi/2 (sigma = +1
/// left, -1 right). Goals outside the lot or off the road network are
/// dropped, and turns need a crossing ahead in the current corridor.
std::vector<ExplorationGoal> exploration_goals(
  const geometry::Pose2d & ego, const sim::LotLayout & layout, const geometry::FovParams & fov,
  double eta);

/// Expected entropy reduction (bits, summed over spots) from driving `traj`:
/// beliefs are rolled forward one step per trajectory state with the
/// rate-model transition, maximum-likelihood observations are simulated for
/// every spot left partially visible, and fully visible spots collapse to
/// their ML reading. Unobserved spots keep drifting toward the stationary
/// rate, so their entropy change (of either sign) participates in the sum.
double information_gain(
  const planner::Trajectory & traj, const std::vector<estimator::SpotBelief> & beliefs,
  const std::vector<geometry::SpotGeom> & spots, const estimator::RateModel & rates,
  const sensing::SensingParams & sensing);

}  // namespace avp::strategy

#endif  // AVP__STRATEGY__EXPLORATION_HPP_
