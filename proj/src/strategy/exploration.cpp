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

#include "avp/strategy/exploration.hpp"

#include "avp/strategy/costs.hpp"

#include <algorithm>
#include <cmath>

namespace avp::strategy
{

std::vector<ExplorationGoal> exploration_goals(
  const geometry::Pose2d & ego, const sim::LotLayout & layout, const geometry::FovParams & fov,
  double eta)
{
  std::vector<ExplorationGoal> goals;
  const auto keep = [&](const geometry::Pose2d & pose) {
    return layout.inside(pose.position()) && layout.on_road(pose.position());
  };

  const double forward = fov.r_x * fov.eps - eta;
  const geometry::Pose2d straight{
    ego.x + forward * std::cos(ego.theta), ego.y + forward * std::sin(ego.theta), ego.theta};
  if (keep(straight)) {
    goals.push_back({1, straight});
  }

  const auto crossing = layout.next_intersection(ego);
  if (!crossing) {
    return goals;
  }
  const double ahead = geometry::to_frame(ego, *crossing).x();
  const double lane_width = layout.params().road_width / 2.0;
  for (const double sigma : {1.0, -1.0}) {
    const Eigen::Vector2d local{ahead + sigma * lane_width / 2.0, sigma * fov.r_y * fov.eps};
    const Eigen::Vector2d position = geometry::from_frame(ego, local);
    const geometry::Pose2d pose{
      position.x(), position.y(), geometry::normalize_angle(ego.theta + sigma * M_PI_2)};
    if (keep(pose)) {
      goals.push_back({sigma > 0.0 ? 2 : 3, pose});
    }
  }
  std::sort(goals.begin(), goals.end(), [](const auto & a, const auto & b) {
    return a.index < b.index;
  });
  return goals;
}

double information_gain(
  const planner::Trajectory & traj, const std::vector<estimator::SpotBelief> & beliefs,
  const std::vector<geometry::SpotGeom> & spots, const estimator::RateModel & rates,
  const sensing::SensingParams & sensing)
{
  if (traj.states.size() < 2 || beliefs.empty()) {
    return 0.0;
  }
  double gain = 0.0;
  for (const auto & belief : beliefs) {
    if (belief.b.empty()) {
      continue;
    }
    const auto & spot = spots[static_cast<std::size_t>(belief.spot_id)];
    const double q = belief.init_class == estimator::InitClass::Occupied ? rates.mu1()
                                                                         : rates.mu2();
    double b = belief.b.front();
    const double h0 = entropy_bits(b);
    for (std::size_t k = 1; k < traj.states.size(); ++k) {
      b = estimator::predict_belief(b, q, belief.init_class, rates);
      const double d =
        geometry::scaled_shifted_distance(traj.states[k].pose, spot.center, sensing.fov);
      const auto view = geometry::classify_view(d, sensing.fov);
      if (view == geometry::ViewClass::Unobserved) {
        continue;
      }
      const int z = b >= 0.5 ? 1 : 0;
      if (view == geometry::ViewClass::Full) {
        b = z;
      } else {
        b = estimator::update_belief(b, z, sensing::observation_confidence(d, sensing));
      }
    }
    gain += h0 - entropy_bits(b);
  }
  return gain;
}

}  // namespace avp::strategy
