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

#include "avp/strategy/costs.hpp"

#include "avp/geometry/footprint.hpp"
#include "avp/planner/collision.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace avp::strategy
{
namespace
{

constexpr double kStaticCostRadius = 8.0;
constexpr double kStaticClearanceCap = 1e3;

struct DynamicSample
{
  double cost{0.0};
  double min_vehicle{std::numeric_limits<double>::infinity()};
  double min_pedestrian{std::numeric_limits<double>::infinity()};
};

int clamp_step(const estimator::AgentPrediction & pred, int step)
{
  const int last = static_cast<int>(pred.mean.size()) - 1;
  return std::min(std::max(step, 0), last);
}

/// Dynamic obstacle cost and clearances of one ego pose against the agents
/// listed in `near` at prediction step `step` (clamped to the last sample).
DynamicSample dynamic_sample(
  const geometry::Pose2d & x, const geometry::Footprint & ego_fp,
  const geometry::Footprint & agent_fp, const Eigen::Vector2d & ego_center,
  const std::vector<estimator::AgentPrediction> & preds, const std::vector<int> & near, int step,
  const CostParams & params)
{
  DynamicSample out;
  const double r2 = params.dynamic_cost_radius * params.dynamic_cost_radius;
  for (const int a : near) {
    const auto & pred = preds[static_cast<std::size_t>(a)];
    const int k = clamp_step(pred, step);
    const Eigen::Vector2d & mean = pred.mean[k];
    if ((mean - ego_center).squaredNorm() > r2) {
      continue;
    }
    if (pred.kind == estimator::AgentKind::Vehicle) {
      const geometry::Pose2d agent_pose{mean.x(), mean.y(), pred.heading[k]};
      const double d = geometry::circle_cover_distance(x, ego_fp, agent_pose, agent_fp);
      out.cost += std::exp(-params.alpha_dyn * d);
      out.min_vehicle = std::min(out.min_vehicle, d);
    } else {
      const double d = geometry::circle_cover_to_disc_distance(x, ego_fp, mean, 0.3);
      out.cost += std::exp(-params.alpha_dyn * d);
      out.min_pedestrian = std::min(out.min_pedestrian, d);
    }
  }
  return out;
}

/// Axis-aligned bound over every prediction sample of one agent, inflated by
/// the cost radius: trajectory states outside it can skip the agent outright.
struct AgentBound
{
  Eigen::Vector2d lo{0.0, 0.0};
  Eigen::Vector2d hi{0.0, 0.0};

  bool contains(const Eigen::Vector2d & p) const
  {
    return p.x() >= lo.x() && p.x() <= hi.x() && p.y() >= lo.y() && p.y() <= hi.y();
  }
};

std::vector<AgentBound> agent_bounds(
  const std::vector<estimator::AgentPrediction> & preds, double radius)
{
  std::vector<AgentBound> bounds(preds.size());
  for (std::size_t a = 0; a < preds.size(); ++a) {
    Eigen::Vector2d lo = Eigen::Vector2d::Constant(std::numeric_limits<double>::infinity());
    Eigen::Vector2d hi = -lo;
    for (const auto & m : preds[a].mean) {
      lo = lo.cwiseMin(m);
      hi = hi.cwiseMax(m);
    }
    bounds[a].lo = lo.array() - radius;
    bounds[a].hi = hi.array() + radius;
  }
  return bounds;
}

std::vector<int> near_agents(
  const std::vector<estimator::AgentPrediction> & preds, const std::vector<AgentBound> & bounds,
  const Eigen::Vector2d & center)
{
  std::vector<int> near;
  for (std::size_t a = 0; a < preds.size(); ++a) {
    if (!preds[a].mean.empty() && bounds[a].contains(center)) {
      near.push_back(static_cast<int>(a));
    }
  }
  return near;
}

double static_cost(
  const geometry::Pose2d & x, const geometry::Footprint & fp, const Eigen::Vector2d & ego_center,
  const sim::StaticIndex & statics, const CostParams & params)
{
  const double reach = kStaticCostRadius + 0.5 * std::hypot(fp.length, fp.width);
  double cost = 0.0;
  statics.for_each_in_radius(ego_center, reach, [&](const Eigen::Vector2d & p) {
    cost += std::exp(-params.alpha_stat * geometry::point_to_footprint_distance(p, x, fp));
  });
  return cost;
}

Eigen::Vector2d footprint_center(const geometry::Pose2d & x, const geometry::Footprint & fp)
{
  return geometry::from_frame(x, {fp.center_offset, 0.0});
}

}  // namespace

double entropy_bits(double b)
{
  b = std::clamp(b, 0.0, 1.0);
  double h = 0.0;
  if (b > 0.0) {
    h -= b * std::log2(b);
  }
  if (b < 1.0) {
    h -= (1.0 - b) * std::log2(1.0 - b);
  }
  return h;
}

double obstacle_cost(
  const geometry::Pose2d & x, const geometry::Footprint & fp,
  const std::vector<estimator::AgentPrediction> & preds, int step,
  const sim::StaticIndex & statics, const CostParams & params)
{
  const geometry::Footprint agent_fp = geometry::Footprint::centered(fp.length, fp.width);
  const Eigen::Vector2d center = footprint_center(x, fp);
  std::vector<int> all;
  for (std::size_t a = 0; a < preds.size(); ++a) {
    if (!preds[a].mean.empty()) {
      all.push_back(static_cast<int>(a));
    }
  }
  return dynamic_sample(x, fp, agent_fp, center, preds, all, step, params).cost +
         static_cost(x, fp, center, statics, params);
}

double smoothness_cost(const planner::Trajectory & traj, const planner::VehicleParams & vp)
{
  const int n = traj.steps();
  if (n < 1) {
    return 0.0;
  }
  const double dt = 0.1;
  std::vector<Eigen::Vector2d> v(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k < n; ++k) {
    v[k] = (traj.states[k + 1].pose.position() - traj.states[k].pose.position()) / dt;
  }
  v[n] = v[n - 1];

  double cost = 0.0;
  for (int k = 0; k < n; ++k) {
    const double accel = (v[k + 1] - v[k]).norm() / (2.0 * vp.v_max);
    const double turning = geometry::cosine_distance(v[k], v[k + 1]) / 2.0;
    const double reverse =
      geometry::cosine_distance(v[k], traj.states[k].pose.heading_vector()) > 1.0 ? 1.0 : 0.0;
    const double gear = geometry::cosine_distance(v[k], v[k + 1]) > 1.0 ? 1.0 : 0.0;
    cost += accel + turning + reverse + gear;
  }
  return cost;
}

StaticCostProfile static_cost_profile(
  const planner::Trajectory & traj, const sim::StaticIndex & statics,
  const planner::VehicleParams & vp, const CostParams & params)
{
  StaticCostProfile profile;
  profile.statics_version = statics.version();
  profile.cost.resize(traj.states.size());
  profile.clearance.resize(traj.states.size());
  const geometry::Footprint ego_fp = vp.footprint();
  for (std::size_t j = 0; j < traj.states.size(); ++j) {
    const auto & pose = traj.states[j].pose;
    profile.cost[j] = static_cost(pose, ego_fp, footprint_center(pose, ego_fp), statics, params);
    profile.clearance[j] = planner::static_clearance(pose, ego_fp, statics, kStaticClearanceCap);
  }
  return profile;
}

WaitEvaluation evaluate_with_wait(
  const planner::Trajectory & traj, const std::vector<estimator::AgentPrediction> & preds,
  const sim::StaticIndex & statics, const planner::VehicleParams & vp, const CostParams & params,
  int max_wait_steps, const StaticCostProfile * profile)
{
  WaitEvaluation out;
  if (traj.empty()) {
    return out;
  }
  const int n = traj.steps();
  const geometry::Footprint ego_fp = vp.footprint();
  const geometry::Footprint agent_fp = geometry::Footprint::centered(vp.length, vp.width);

  int horizon = 0;
  for (const auto & pred : preds) {
    horizon = std::max(horizon, static_cast<int>(pred.mean.size()) - 1);
  }
  // With nothing to wait out, cost grows strictly with t_w; only t_w = 0 can
  // win the grid search.
  const int w_max = horizon == 0 ? 0 : std::max(max_wait_steps, 0);

  StaticCostProfile local;
  const bool reusable = profile != nullptr &&
                        profile->statics_version == statics.version() &&
                        profile->cost.size() == traj.states.size();
  if (!reusable) {
    local = static_cost_profile(traj, statics, vp, params);
  }
  const StaticCostProfile & stat = reusable ? *profile : local;
  const std::vector<double> & stat_cost = stat.cost;
  const double min_stat = *std::min_element(stat.clearance.begin(), stat.clearance.end());

  std::vector<Eigen::Vector2d> centers(traj.states.size());
  for (std::size_t j = 0; j < traj.states.size(); ++j) {
    centers[j] = footprint_center(traj.states[j].pose, ego_fp);
  }
  const std::vector<AgentBound> bounds = agent_bounds(preds, params.dynamic_cost_radius);

  // Wait samples: the ego holds x_0 while agents advance. Samples at or past
  // the prediction horizon are all equal; compute the frozen one once.
  const int wait_distinct = std::min(w_max, horizon);
  std::vector<DynamicSample> wait(static_cast<std::size_t>(w_max) + 1);
  {
    const std::vector<int> near = near_agents(preds, bounds, centers[0]);
    for (int k = 0; k <= wait_distinct; ++k) {
      wait[k] =
        dynamic_sample(traj.states[0].pose, ego_fp, agent_fp, centers[0], preds, near, k, params);
    }
    for (int k = wait_distinct + 1; k <= w_max; ++k) {
      wait[k] = wait[wait_distinct];
    }
  }

  // Drive samples: state j executes at absolute step t_w + j, so each state
  // needs samples for the window [j, j + w_max], frozen past the horizon.
  const int stride = w_max + 1;
  std::vector<DynamicSample> drive(static_cast<std::size_t>(n + 1) * stride);
  for (int j = 1; j <= n; ++j) {
    const auto & pose = traj.states[j].pose;
    const std::vector<int> near = near_agents(preds, bounds, centers[j]);
    if (near.empty()) {
      continue;
    }
    const int distinct = std::clamp(horizon - j, 0, w_max);
    for (int tw = 0; tw <= distinct; ++tw) {
      drive[j * stride + tw] =
        dynamic_sample(pose, ego_fp, agent_fp, centers[j], preds, near, j + tw, params);
    }
    for (int tw = distinct + 1; tw <= w_max; ++tw) {
      drive[j * stride + tw] = drive[j * stride + distinct];
    }
  }

  const double smooth = smoothness_cost(traj, vp);
  const double drive_stat_sum = std::accumulate(stat_cost.begin() + 1, stat_cost.end(), 0.0);

  double best_total = std::numeric_limits<double>::infinity();
  double best_safe_total = std::numeric_limits<double>::infinity();
  int best_tw = 0;
  int best_safe_tw = -1;

  double wait_dyn_prefix = 0.0;
  double wait_min_vehicle = std::numeric_limits<double>::infinity();
  double wait_min_ped = std::numeric_limits<double>::infinity();
  for (int tw = 0; tw <= w_max; ++tw) {
    wait_dyn_prefix += wait[tw].cost;
    wait_min_vehicle = std::min(wait_min_vehicle, wait[tw].min_vehicle);
    wait_min_ped = std::min(wait_min_ped, wait[tw].min_pedestrian);

    double drive_dyn = 0.0;
    double drive_min_vehicle = std::numeric_limits<double>::infinity();
    double drive_min_ped = std::numeric_limits<double>::infinity();
    for (int j = 1; j <= n; ++j) {
      const DynamicSample & s = drive[j * stride + tw];
      drive_dyn += s.cost;
      drive_min_vehicle = std::min(drive_min_vehicle, s.min_vehicle);
      drive_min_ped = std::min(drive_min_ped, s.min_pedestrian);
    }

    const double obstacle =
      (tw + 1) * stat_cost[0] + wait_dyn_prefix + drive_stat_sum + drive_dyn;
    const double total = n + tw + params.obstacle_scale * obstacle + smooth;

    const double min_vehicle = std::min(wait_min_vehicle, drive_min_vehicle);
    const double min_ped = std::min(wait_min_ped, drive_min_ped);
    const bool safe = min_vehicle >= params.gate_vehicle() &&
                      min_ped >= params.gate_pedestrian() &&
                      min_stat >= params.safety_static;

    if (total < best_total) {
      best_total = total;
      best_tw = tw;
    }
    if (safe && total < best_safe_total) {
      best_safe_total = total;
      best_safe_tw = tw;
    }
  }

  const int pick = best_safe_tw >= 0 ? best_safe_tw : best_tw;
  out.safe = best_safe_tw >= 0;
  out.t_w_steps = pick;

  double wait_dyn = 0.0;
  double drive_dyn = 0.0;
  double min_vehicle = std::numeric_limits<double>::infinity();
  double min_ped = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= pick; ++k) {
    wait_dyn += wait[k].cost;
    min_vehicle = std::min(min_vehicle, wait[k].min_vehicle);
    min_ped = std::min(min_ped, wait[k].min_pedestrian);
  }
  for (int j = 1; j <= n; ++j) {
    const DynamicSample & s = drive[j * stride + pick];
    drive_dyn += s.cost;
    min_vehicle = std::min(min_vehicle, s.min_vehicle);
    min_ped = std::min(min_ped, s.min_pedestrian);
  }
  out.min_vehicle_clearance = min_vehicle;
  out.min_pedestrian_clearance = min_ped;
  out.min_static_clearance = min_stat;
  out.breakdown.time_term = n;
  out.breakdown.wait_term = pick;
  out.breakdown.obstacle_term =
    params.obstacle_scale *
    ((pick + 1) * stat_cost[0] + wait_dyn + drive_stat_sum + drive_dyn);
  out.breakdown.smooth_term = smooth;
  out.breakdown.total = out.breakdown.time_term + out.breakdown.wait_term +
                        out.breakdown.obstacle_term + out.breakdown.smooth_term;
  return out;
}

}  // namespace avp::strategy
