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

#include "avp/harness/episode.hpp"

#include "avp/strategy/costs.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace avp::harness
{

namespace
{

const std::vector<std::pair<std::string, MethodId>> & method_table()
{
  using estimator::EstimatorMode;
  using strategy::StrategyMode;
  static const std::vector<std::pair<std::string, MethodId>> table = {
    {"full", {EstimatorMode::Full, StrategyMode::Full}},
    {"greedy", {EstimatorMode::Greedy, StrategyMode::Full}},
    {"identical_prediction", {EstimatorMode::IdenticalPrediction, StrategyMode::Full}},
    {"position_only", {EstimatorMode::PositionOnly, StrategyMode::Full}},
    {"no_wait", {EstimatorMode::Full, StrategyMode::NoWait}},
    {"lawn_mower", {EstimatorMode::Full, StrategyMode::LawnMower}},
  };
  return table;
}

/// Streak of blocked cycles after which the yield gates are relaxed to break
/// mutual-yield deadlocks; mirrors the agents' own deadlock rule.
constexpr int kHoldRelaxStreak = 30;
constexpr double kHoldRelax = 0.03;

/// A step shorter than this is treated as standing still when estimating
/// curvature.
constexpr double kMinMovingStep = 1e-3;

}  // namespace

const std::vector<std::string> & method_names()
{
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto & [name, id] : method_table()) {
      out.push_back(name);
    }
    return out;
  }();
  return names;
}

MethodId parse_method(const std::string & name)
{
  for (const auto & [key, id] : method_table()) {
    if (key == name) {
      return id;
    }
  }
  std::ostringstream msg;
  msg << "unknown method '" << name << "'; valid methods:";
  for (const auto & valid : method_names()) {
    msg << " " << valid;
  }
  throw std::invalid_argument(msg.str());
}

std::string method_name(const MethodId & method)
{
  for (const auto & [key, id] : method_table()) {
    if (id.estimator == method.estimator && id.strategy == method.strategy) {
      return key;
    }
  }
  return "custom";
}

EpisodeResult run_episode(
  const sim::ScenarioConfig & cfg, const MethodId & method, std::uint64_t seed,
  const EpisodeOptions & opts)
{
  EpisodeResult result;

  sim::World world = sim::World::generate(cfg, seed);

  estimator::EstimatorParams eparams;
  eparams.rates.dt = cfg.dt;
  estimator::Estimator est(eparams, method.estimator, world.layout().spots());

  strategy::StrategyParams sparams;
  sparams.cost.dt = cfg.dt;
  sparams.rates.dt = cfg.dt;
  strategy::StrategyPlanner splanner(method.strategy, sparams, world.vehicle(), world.layout());

  const geometry::Footprint fp = world.vehicle().footprint();
  geometry::Pose2d ego = world.ego_start();
  double speed = 0.0;
  int target_spot = -1;
  int hold_streak = 0;

  const int max_steps =
    std::max(1, static_cast<int>(std::lround(cfg.timeout_s / cfg.dt)));

  planner::Trajectory executed;
  executed.states.push_back({ego, 0.0, 0.0});

  double runtime_sum = 0.0;
  double path_length = 0.0;
  double heading_rate_sum = 0.0;
  double curvature_sum = 0.0;
  int curvature_n = 0;
  double dyn_sum = 0.0;
  int dyn_n = 0;
  double min_static = std::numeric_limits<double>::infinity();
  int steps_run = 0;

  for (int k = 0; k < max_steps; ++k) {
    const double t = world.clock();
    const auto observations = world.sense(ego);
    const auto predictions = world.predictions(eparams.horizon_steps);

    const auto t0 = std::chrono::steady_clock::now();
    const auto beliefs = est.estimate(ego, observations, predictions, opts.threads);
    const auto decision =
      splanner.plan(ego, speed, beliefs, predictions, world.statics(), opts.threads);
    runtime_sum += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    geometry::Pose2d next = ego;
    double applied_v = 0.0;
    bool held = true;
    if (decision.t_w_steps == 0 && decision.trajectory.states.size() >= 2) {
      const geometry::Pose2d & step_target = decision.trajectory.states[1].pose;
      const double relax = hold_streak > kHoldRelaxStreak ? kHoldRelax : 0.0;
      if (world.ego_step_safe(step_target, relax)) {
        next = step_target;
        applied_v = decision.trajectory.states[0].v;
        held = false;
      }
    }
    hold_streak = held ? hold_streak + 1 : 0;

    world.step(next);
    ++steps_run;

    const double min_vehicle = world.vehicle_clearance(next);
    const double min_pedestrian = world.pedestrian_clearance(next);
    const double min_stat = world.static_clearance_at(next);

    const double step_dist = (next.position() - ego.position()).norm();
    path_length += step_dist;
    const double dtheta = std::abs(geometry::angle_difference(next.theta, ego.theta));
    heading_rate_sum += dtheta / cfg.dt;
    if (step_dist > kMinMovingStep) {
      curvature_sum += dtheta / step_dist;
      ++curvature_n;
    }
    const double dyn = std::min(min_vehicle, min_pedestrian);
    if (std::isfinite(dyn)) {
      dyn_sum += dyn;
      ++dyn_n;
    }
    min_static = std::min(min_static, min_stat);
    executed.states.push_back({next, applied_v, 0.0});

    CycleRecord record;
    record.k = k;
    record.t = t;
    record.ego = next;
    record.v = applied_v;
    record.action = decision.action;
    record.spot_id = decision.spot_id;
    record.t_w_steps = decision.t_w_steps;
    record.cost = decision.cost;
    record.info_gain = decision.info_gain;
    record.exploration_goal = decision.exploration_goal;
    record.held = held;
    record.min_vehicle = min_vehicle;
    record.min_pedestrian = min_pedestrian;
    record.min_static = min_stat;

    if (opts.record_trace) {
      result.cycles.push_back(record);
      for (const auto & belief : beliefs) {
        BeliefSample sample;
        sample.t = t;
        sample.spot_id = belief.spot_id;
        sample.init = belief.init_class;
        sample.b = belief.b.empty() ? 0.5 : belief.b.front();
        sample.b_end = belief.b.empty() ? 0.5 : belief.b.back();
        result.beliefs.push_back(sample);
      }
    }
    if (opts.observer != nullptr) {
      opts.observer->on_cycle(record, beliefs, decision, world);
    }

    if (min_vehicle <= 0.0 || min_pedestrian <= 0.0 || min_stat <= 0.0) {
      result.metrics.collided = true;
      ego = next;
      break;
    }

    if (decision.action == strategy::Action::Park) {
      target_spot = decision.spot_id;
    }
    if (
      target_spot >= 0 && held &&
      world.layout().spots()[static_cast<std::size_t>(target_spot)].footprint_inside(next, fp)) {
      result.metrics.parked = true;
      result.metrics.parking_time = world.clock();
      ego = next;
      break;
    }

    ego = next;
    speed = applied_v;
  }

  auto & metrics = result.metrics;
  metrics.runtime_per_cycle = steps_run > 0 ? runtime_sum / steps_run : 0.0;
  metrics.path_length = path_length;
  metrics.avg_dist_dyn = dyn_n > 0 ? dyn_sum / dyn_n : 0.0;
  metrics.min_dist_static = std::isfinite(min_static) ? min_static : 0.0;
  metrics.smoothness_cost = strategy::smoothness_cost(executed, world.vehicle());
  metrics.avg_heading_rate =
    steps_run > 0 ? (heading_rate_sum / steps_run) * (180.0 / M_PI) : 0.0;
  metrics.avg_curvature = curvature_n > 0 ? curvature_sum / curvature_n : 0.0;
  return result;
}

}  // namespace avp::harness
