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

#ifndef AVP__STRATEGY__PLANNER_HPP_
#define AVP__STRATEGY__PLANNER_HPP_

#include "avp/estimator/belief.hpp"
#include "avp/estimator/prediction.hpp"
#include "avp/geometry/pose.hpp"
#include "avp/planner/hybrid_astar.hpp"
#include "avp/planner/trajectory.hpp"
#include "avp/planner/vehicle.hpp"
#include "avp/sensing/observation.hpp"
#include "avp/sim/layout.hpp"
#include "avp/sim/static_index.hpp"
#include "avp/strategy/costs.hpp"
#include "avp/strategy/exploration.hpp"

#include <unordered_map>
#include <vector>

namespace avp::strategy
{

enum class StrategyMode {
  Full,
  /// Never waits in front of a spot: t_w is pinned to zero.
  NoWait,
  /// Ranks exploration by information gain alone, ignoring motion cost.
  LawnMower,
};

enum class Action { Park, Explore, Contingency };

struct Decision
{
  Action action{Action::Contingency};
  /// Planned states from the current pose; a single state means hold.
  planner::Trajectory trajectory;
  int spot_id{-1};
  int t_w_steps{0};
  /// Ranking cost: C for Park, C_e = C - I for Explore.
  double cost{0.0};
  double info_gain{0.0};
  /// 1 straight, 2 left, 3 right; 0 when not exploring.
  int exploration_goal{0};
  std::vector<int> candidate_spots;
  CostBreakdown breakdown;
};

struct StrategyParams
{
  CostParams cost;
  sensing::SensingParams sensing;
  estimator::RateModel rates;
  /// Cached parking plans are re-searched after this many cycles.
  int refresh_period{10};
};

/// Cycle-rate decision layer: filters candidate spots from the belief
/// forecasts, evaluates wait-and-go parking plans to each, falls back to
/// information-gain exploration, and degenerates to a contingency stop.
///
/// Parking searches are cached between cycles. The plan being executed is
/// advanced exactly (its consumed prefix dropped); other candidates keep
/// their cached geometry and are only re-evaluated against the fresh
/// predictions until their age or a static-world change forces a re-search.
/// A cached plan can only be selected after being re-planned from the
/// current pose this cycle.
class StrategyPlanner
{
public:
  StrategyPlanner(
    StrategyMode mode, const StrategyParams & params, const planner::VehicleParams & vehicle,
    sim::LotLayout layout);

  /// One decision cycle. `threads` parallelizes trajectory generation and
  /// evaluation across goals with bit-identical results.
  Decision plan(
    const geometry::Pose2d & ego, double ego_speed,
    const std::vector<estimator::SpotBelief> & beliefs,
    const std::vector<estimator::AgentPrediction> & preds, const sim::StaticIndex & statics,
    int threads = 1);

  StrategyMode mode() const { return mode_; }
  const StrategyParams & params() const { return params_; }

private:
  struct CacheEntry
  {
    planner::Trajectory traj;
    StaticCostProfile profile;
    geometry::Pose2d planned_from;
    bool feasible{false};
    int statics_version{-1};
    int planned_cycle{-1};
  };

  planner::GridParams spot_grid() const;
  planner::GridParams explore_grid() const;

  void advance_commitment(const geometry::Pose2d & ego, int statics_version);

  Decision explore_or_stop(
    const geometry::Pose2d & ego, double ego_speed,
    const std::vector<estimator::SpotBelief> & beliefs,
    const std::vector<estimator::AgentPrediction> & preds, const sim::StaticIndex & statics,
    std::vector<int> candidate_ids, int threads);

  bool collision_course(
    const geometry::Pose2d & ego, const std::vector<estimator::AgentPrediction> & preds) const;

  StrategyMode mode_;
  StrategyParams params_;
  planner::VehicleParams vehicle_;
  sim::LotLayout layout_;
  int cycle_{0};
  int committed_spot_{-1};
  int committed_statics_version_{-1};
  planner::Trajectory committed_traj_;
  StaticCostProfile committed_profile_;
  std::unordered_map<int, CacheEntry> cache_;
};

}  // namespace avp::strategy

#endif  // AVP__STRATEGY__PLANNER_HPP_
