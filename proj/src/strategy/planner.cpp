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

#include "avp/strategy/planner.hpp"

#include "avp/geometry/footprint.hpp"
#include "avp/planner/spline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace avp::strategy
{
namespace
{

bool same_pose(const geometry::Pose2d & a, const geometry::Pose2d & b)
{
  return a.x == b.x && a.y == b.y && a.theta == b.theta;
}

struct ScoredCandidate
{
  int spot_id{-1};
  const planner::Trajectory * traj{nullptr};
  const StaticCostProfile * profile{nullptr};
  WaitEvaluation eval;
  bool feasible{false};
  bool fresh{false};
};

struct ScoredGoal
{
  ExplorationGoal goal;
  planner::Trajectory traj;
  WaitEvaluation eval;
  double info{0.0};
  double ranking{0.0};
  bool feasible{false};
};

}  // namespace

StrategyPlanner::StrategyPlanner(
  StrategyMode mode, const StrategyParams & params, const planner::VehicleParams & vehicle,
  sim::LotLayout layout)
: mode_(mode), params_(params), vehicle_(vehicle), layout_(std::move(layout))
{
}

planner::GridParams StrategyPlanner::spot_grid() const
{
  planner::GridParams grid;
  grid.dt = params_.cost.dt;
  // Tight arrival tolerances keep the final pose's footprint inside the
  // spot lines (0.2 m / 10 deg would let a corner poke out laterally).
  grid.goal_position_tolerance = 0.1;
  grid.goal_heading_tolerance = 5.0 * M_PI / 180.0;
  grid.min_static_clearance = params_.cost.safety_static;
  // Docks that need more search than this are treated as infeasible for the
  // current cycle rather than stalling it; a later cycle retries from closer.
  grid.max_nodes = 20000;
  return grid;
}

planner::GridParams StrategyPlanner::explore_grid() const
{
  planner::GridParams grid;
  grid.dt = params_.cost.dt;
  grid.min_static_clearance = params_.cost.safety_static;
  grid.max_nodes = 20000;
  return grid;
}

void StrategyPlanner::advance_commitment(const geometry::Pose2d & ego, int statics_version)
{
  if (committed_spot_ < 0 || committed_traj_.empty()) {
    return;
  }
  if (committed_statics_version_ != statics_version) {
    committed_spot_ = -1;
    committed_traj_.states.clear();
    return;
  }
  if (committed_traj_.states.size() >= 2 && same_pose(ego, committed_traj_.states[1].pose)) {
    committed_traj_.pop_front();
    committed_profile_.cost.erase(committed_profile_.cost.begin());
    committed_profile_.clearance.erase(committed_profile_.clearance.begin());
    return;
  }
  if (same_pose(ego, committed_traj_.states[0].pose)) {
    return;
  }
  committed_spot_ = -1;
  committed_traj_.states.clear();
}

bool StrategyPlanner::collision_course(
  const geometry::Pose2d & ego, const std::vector<estimator::AgentPrediction> & preds) const
{
  const geometry::Footprint ego_fp = vehicle_.footprint();
  const geometry::Footprint agent_fp = geometry::Footprint::centered(vehicle_.length, vehicle_.width);
  for (const auto & pred : preds) {
    for (std::size_t k = 0; k < pred.mean.size(); ++k) {
      if (pred.kind == estimator::AgentKind::Vehicle) {
        const geometry::Pose2d pose{pred.mean[k].x(), pred.mean[k].y(), pred.heading[k]};
        if (
          geometry::circle_cover_distance(ego, ego_fp, pose, agent_fp) <
          params_.cost.safety_vehicle) {
          return true;
        }
      } else if (
        geometry::circle_cover_to_disc_distance(ego, ego_fp, pred.mean[k], 0.3) <
        params_.cost.safety_pedestrian) {
        return true;
      }
    }
  }
  return false;
}

Decision StrategyPlanner::plan(
  const geometry::Pose2d & ego, double ego_speed,
  const std::vector<estimator::SpotBelief> & beliefs,
  const std::vector<estimator::AgentPrediction> & preds, const sim::StaticIndex & statics,
  int threads)
{
  ++cycle_;
  advance_commitment(ego, statics.version());

  std::vector<int> candidate_ids;
  for (const auto & belief : beliefs) {
    if (belief.init_class == estimator::InitClass::Unobservable || belief.b.empty()) {
      continue;
    }
    const double threshold = belief.init_class == estimator::InitClass::Vacant
                               ? params_.cost.p_vacant
                               : params_.cost.p_occupied;
    if (belief.b.back() <= threshold) {
      candidate_ids.push_back(belief.spot_id);
    }
  }

  const int max_wait = mode_ == StrategyMode::NoWait ? 0 : params_.cost.max_wait_steps();
  const int n_cand = static_cast<int>(candidate_ids.size());

  std::vector<ScoredCandidate> scored(candidate_ids.size());
  std::vector<int> to_search;
  for (int i = 0; i < n_cand; ++i) {
    const int id = candidate_ids[static_cast<std::size_t>(i)];
    scored[i].spot_id = id;
    if (id == committed_spot_ && !committed_traj_.empty()) {
      continue;
    }
    const auto it = cache_.find(id);
    const bool valid = it != cache_.end() && it->second.statics_version == statics.version() &&
                       cycle_ - it->second.planned_cycle < params_.refresh_period;
    if (!valid) {
      to_search.push_back(i);
    }
  }

  {
    std::vector<CacheEntry> found(to_search.size());
    const int n_search = static_cast<int>(to_search.size());
    #pragma omp parallel for schedule(static) num_threads(std::max(threads, 1))
    for (int s = 0; s < n_search; ++s) {
      const int id = candidate_ids[static_cast<std::size_t>(to_search[s])];
      const geometry::Pose2d goal = layout_.parked_goal(id, vehicle_.footprint());
      auto result = planner::hybrid_astar(ego, goal, true, vehicle_, statics, spot_grid());
      found[s].traj = std::move(result.trajectory);
      found[s].traj.kind = planner::TrajectoryKind::ToSpot;
      found[s].feasible = result.feasible;
      if (result.feasible) {
        found[s].profile = static_cost_profile(found[s].traj, statics, vehicle_, params_.cost);
      }
      found[s].planned_from = ego;
      found[s].statics_version = statics.version();
      found[s].planned_cycle = cycle_;
    }
    for (int s = 0; s < n_search; ++s) {
      cache_[candidate_ids[static_cast<std::size_t>(to_search[s])]] = std::move(found[s]);
    }
  }

  for (int i = 0; i < n_cand; ++i) {
    const int id = scored[i].spot_id;
    if (id == committed_spot_ && !committed_traj_.empty()) {
      scored[i].traj = &committed_traj_;
      scored[i].profile = &committed_profile_;
      scored[i].feasible = true;
      scored[i].fresh = true;
    } else {
      const CacheEntry & entry = cache_.at(id);
      scored[i].traj = &entry.traj;
      scored[i].profile = &entry.profile;
      scored[i].feasible = entry.feasible;
      scored[i].fresh = same_pose(entry.planned_from, ego);
    }
  }

  #pragma omp parallel for schedule(static) num_threads(std::max(threads, 1))
  for (int i = 0; i < n_cand; ++i) {
    if (scored[i].feasible) {
      scored[i].eval = evaluate_with_wait(
        *scored[i].traj, preds, statics, vehicle_, params_.cost, max_wait, scored[i].profile);
    }
  }

  const auto pick_winner = [&]() {
    int best = -1;
    for (int i = 0; i < n_cand; ++i) {
      if (!scored[i].feasible || !scored[i].eval.safe) {
        continue;
      }
      if (
        best < 0 || scored[i].eval.breakdown.total < scored[best].eval.breakdown.total ||
        (scored[i].eval.breakdown.total == scored[best].eval.breakdown.total &&
         scored[i].spot_id < scored[best].spot_id)) {
        best = i;
      }
    }
    return best;
  };

  int winner = pick_winner();
  while (winner >= 0 && !scored[winner].fresh) {
    const int id = scored[winner].spot_id;
    const geometry::Pose2d goal = layout_.parked_goal(id, vehicle_.footprint());
    auto result = planner::hybrid_astar(ego, goal, true, vehicle_, statics, spot_grid());
    CacheEntry & entry = cache_[id];
    entry.traj = std::move(result.trajectory);
    entry.traj.kind = planner::TrajectoryKind::ToSpot;
    entry.feasible = result.feasible;
    if (result.feasible) {
      entry.profile = static_cost_profile(entry.traj, statics, vehicle_, params_.cost);
    }
    entry.planned_from = ego;
    entry.statics_version = statics.version();
    entry.planned_cycle = cycle_;
    scored[winner].traj = &entry.traj;
    scored[winner].profile = &entry.profile;
    scored[winner].feasible = entry.feasible;
    scored[winner].fresh = true;
    if (entry.feasible) {
      scored[winner].eval = evaluate_with_wait(
        entry.traj, preds, statics, vehicle_, params_.cost, max_wait, &entry.profile);
    }
    winner = pick_winner();
  }

  if (winner < 0) {
    committed_spot_ = -1;
    committed_traj_.states.clear();
    return explore_or_stop(ego, ego_speed, beliefs, preds, statics, std::move(candidate_ids),
                           threads);
  }

  Decision decision;
  decision.action = Action::Park;
  decision.trajectory = *scored[winner].traj;
  decision.spot_id = scored[winner].spot_id;
  decision.t_w_steps = scored[winner].eval.t_w_steps;
  decision.cost = scored[winner].eval.breakdown.total;
  decision.breakdown = scored[winner].eval.breakdown;
  decision.candidate_spots = std::move(candidate_ids);

  committed_spot_ = decision.spot_id;
  committed_statics_version_ = statics.version();
  committed_traj_ = decision.trajectory;
  committed_profile_ = *scored[winner].profile;
  return decision;
}

Decision StrategyPlanner::explore_or_stop(
  const geometry::Pose2d & ego, double ego_speed,
  const std::vector<estimator::SpotBelief> & beliefs,
  const std::vector<estimator::AgentPrediction> & preds, const sim::StaticIndex & statics,
  std::vector<int> candidate_ids, int threads)
{
  const auto goals = exploration_goals(ego, layout_, params_.sensing.fov, params_.cost.eta);
  std::vector<ScoredGoal> scored(goals.size());
  const int n_goals = static_cast<int>(goals.size());
  const double start_speed = std::clamp(ego_speed, 0.0, vehicle_.v_max);

  #pragma omp parallel for schedule(static) num_threads(std::max(threads, 1))
  for (int i = 0; i < n_goals; ++i) {
    ScoredGoal & sg = scored[i];
    sg.goal = goals[static_cast<std::size_t>(i)];
    if (sg.goal.index == 1) {
      const double forward = params_.sensing.fov.r_x * params_.sensing.fov.eps - params_.cost.eta;
      sg.traj = planner::straight_spline(ego, forward, start_speed, vehicle_, params_.cost.dt);
      sg.feasible = !sg.traj.empty();
    } else {
      auto result =
        planner::hybrid_astar(ego, sg.goal.pose, false, vehicle_, statics, explore_grid());
      sg.traj = std::move(result.trajectory);
      sg.feasible = result.feasible;
    }
    if (sg.feasible) {
      sg.traj.kind = planner::TrajectoryKind::ToExplorationGoal;
      sg.eval = evaluate_with_wait(sg.traj, preds, statics, vehicle_, params_.cost, 0);
      sg.info = information_gain(sg.traj, beliefs, layout_.spots(), params_.rates, params_.sensing);
      sg.ranking = mode_ == StrategyMode::LawnMower ? -sg.info
                                                    : sg.eval.breakdown.total - sg.info;
    }
  }

  int best = -1;
  for (int i = 0; i < n_goals; ++i) {
    if (!scored[i].feasible || !scored[i].eval.safe) {
      continue;
    }
    if (best < 0 || scored[i].ranking < scored[best].ranking) {
      best = i;
    }
  }

  Decision decision;
  decision.candidate_spots = std::move(candidate_ids);
  if (best >= 0) {
    decision.action = Action::Explore;
    decision.trajectory = scored[best].traj;
    decision.cost = scored[best].ranking;
    decision.info_gain = scored[best].info;
    decision.exploration_goal = scored[best].goal.index;
    decision.breakdown = scored[best].eval.breakdown;
    return decision;
  }

  decision.action = Action::Contingency;
  if (collision_course(ego, preds)) {
    double best_margin = -std::numeric_limits<double>::infinity();
    int retreat = -1;
    for (int i = 0; i < n_goals; ++i) {
      // Retreats dodge dynamic agents; driving below static clearance is
      // never an acceptable way to do that.
      if (!scored[i].feasible ||
          scored[i].eval.min_static_clearance < params_.cost.safety_static) {
        continue;
      }
      const double margin = std::min(
        {scored[i].eval.min_vehicle_clearance - params_.cost.safety_vehicle,
         scored[i].eval.min_pedestrian_clearance - params_.cost.safety_pedestrian,
         scored[i].eval.min_static_clearance - params_.cost.safety_static});
      if (margin > best_margin) {
        best_margin = margin;
        retreat = i;
      }
    }
    if (retreat >= 0) {
      decision.trajectory = scored[retreat].traj;
      decision.exploration_goal = scored[retreat].goal.index;
      decision.breakdown = scored[retreat].eval.breakdown;
      decision.info_gain = scored[retreat].info;
      return decision;
    }
  }
  decision.trajectory.states = {planner::TrajectoryState{ego, 0.0, 0.0}};
  decision.trajectory.kind = planner::TrajectoryKind::ToExplorationGoal;
  return decision;
}

}  // namespace avp::strategy
