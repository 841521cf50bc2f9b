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

#ifndef AVP__STRATEGY__COSTS_HPP_
#define AVP__STRATEGY__COSTS_HPP_

#include "avp/estimator/prediction.hpp"
#include "avp/geometry/pose.hpp"
#include "avp/planner/trajectory.hpp"
#include "avp/planner/vehicle.hpp"
#include "avp/sim/static_index.hpp"

#include <limits>
#include <vector>

namespace avp::strategy
{

struct CostParams
{
  /// Candidate filter thresholds: keep initially vacant spots with horizon
  /// belief <= p_vacant and initially occupied ones with belief <= p_occupied.
  double p_vacant{0.3};
  double p_occupied{0.7};
  /// Wait-time cap T_w; the grid is {0, dt, ..., max_wait_s}.
  double max_wait_s{5.0};
  double alpha_dyn{2.0};
  double alpha_stat{3.0};
  /// Forward shortfall of the straight exploration goal, meters.
  double eta{0.5};
  /// Hard safety thresholds an executed trajectory must keep.
  double safety_vehicle{0.5};
  double safety_pedestrian{0.9};
  double safety_static{0.2};
  /// Planning gates sit one yield margin above the dynamic thresholds, so
  /// accepted trajectories stay executable against yielding agents.
  double gate_margin{0.05};
  /// Dynamic agents farther than this from a trajectory sample contribute
  /// neither cost nor a binding clearance.
  double dynamic_cost_radius{8.0};
  /// Common positive rescale of every obstacle term; decisions must be
  /// invariant to it whenever the argmin is strict.
  double obstacle_scale{1.0};
  double dt{0.1};

  double gate_vehicle() const { return safety_vehicle + gate_margin; }
  double gate_pedestrian() const { return safety_pedestrian + gate_margin; }
  int max_wait_steps() const { return static_cast<int>(max_wait_s / dt + 0.5); }
};

struct CostBreakdown
{
  double time_term{0.0};
  double wait_term{0.0};
  double obstacle_term{0.0};
  double smooth_term{0.0};
  double total{0.0};
};

/// Binary entropy in bits, with 0 log 0 := 0.
double entropy_bits(double b);

/// Proximity cost of one ego pose: sum of exp(-alpha_dyn * d5) over dynamic
/// agents (five-disc distance, skipped beyond dynamic_cost_radius) plus
/// exp(-alpha_stat * d) over static points (exact edge distance).
/// `step` indexes the prediction samples and clamps to the last one.
double obstacle_cost(
  const geometry::Pose2d & x, const geometry::Footprint & fp,
  const std::vector<estimator::AgentPrediction> & preds, int step,
  const sim::StaticIndex & statics, const CostParams & params);

/// Discomfort of a trajectory: per step, normalized acceleration magnitude,
/// half the velocity-direction cosine distance, a reverse indicator (velocity
/// against the heading), and a gear-change indicator (velocity reversal).
/// Velocities are position finite differences; the one past the final state
/// repeats the last so a constant-velocity trajectory costs zero.
double smoothness_cost(const planner::Trajectory & traj, const planner::VehicleParams & vp);

struct WaitEvaluation
{
  bool safe{false};
  int t_w_steps{0};
  CostBreakdown breakdown;
  double min_vehicle_clearance{std::numeric_limits<double>::infinity()};
  double min_pedestrian_clearance{std::numeric_limits<double>::infinity()};
  double min_static_clearance{std::numeric_limits<double>::infinity()};
};

/// Per-state static obstacle cost and clearance of a trajectory. These only
/// depend on the trajectory geometry and the static world, so callers that
/// re-evaluate a cached trajectory against fresh predictions can reuse them.
struct StaticCostProfile
{
  std::vector<double> cost;
  std::vector<double> clearance;
  int statics_version{-1};
};

StaticCostProfile static_cost_profile(
  const planner::Trajectory & traj, const sim::StaticIndex & statics,
  const planner::VehicleParams & vp, const CostParams & params);

/// Grid search over wait times t_w in steps of dt up to max_wait_steps:
///
///   C(t_w) = N_g + t_w + sum_{k=0}^{t_w} c_o(x_0, Y(k))
///          + sum_{k=t_w+1}^{t_w+N_g} c_o(x(k - t_w), Y(k)) + smoothness
///
/// where the ego holds x_0 during the wait and predictions freeze at their
/// last sample beyond the horizon. Returns the minimizing safe t_w with its
/// breakdown and the per-kind clearance minima along that execution; when no
/// wait passes the safety gates, `safe` is false and the breakdown reports
/// the unconstrained minimizer.
WaitEvaluation evaluate_with_wait(
  const planner::Trajectory & traj, const std::vector<estimator::AgentPrediction> & preds,
  const sim::StaticIndex & statics, const planner::VehicleParams & vp, const CostParams & params,
  int max_wait_steps, const StaticCostProfile * profile = nullptr);

}  // namespace avp::strategy

#endif  // AVP__STRATEGY__COSTS_HPP_
