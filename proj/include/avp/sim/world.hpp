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

#ifndef AVP__SIM__WORLD_HPP_
#define AVP__SIM__WORLD_HPP_

#include "avp/common/rng.hpp"
#include "avp/estimator/prediction.hpp"
#include "avp/geometry/pose.hpp"
#include "avp/planner/trajectory.hpp"
#include "avp/planner/vehicle.hpp"
#include "avp/sensing/observation.hpp"
#include "avp/sim/layout.hpp"
#include "avp/sim/static_index.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace avp::sim
{

enum class ScriptKind { ExitSpot, EnterSpot, PedestrianWalk };

/// One scripted agent as configured; runtime state lives in ScriptedAgent.
struct AgentScript
{
  estimator::AgentKind kind{estimator::AgentKind::Vehicle};
  ScriptKind script{ScriptKind::ExitSpot};
  int spot_id{-1};
  double spawn_time{0.0};
  std::optional<geometry::Pose2d> entry_pose;
  std::optional<Eigen::Vector2d> start;
  std::optional<Eigen::Vector2d> velocity;
};

struct OccupancyOverride
{
  int spot_id{0};
  bool occupied{false};
};

struct EgoStart
{
  enum class Mode { Randomized, Entrance, Pose };
  Mode mode{Mode::Randomized};
  geometry::Pose2d pose;
};

struct ScenarioConfig
{
  std::string name{"default"};
  LotParams lot;
  double occupancy_near{0.9};
  double occupancy_far{0.5};
  int vehicle_agents{3};
  int pedestrian_agents{2};
  double timeout_s{120.0};
  double dt{0.1};
  EgoStart ego_start;
  std::vector<AgentScript> explicit_agents;
  std::vector<OccupancyOverride> occupancy_overrides;
};

struct ScriptedAgent
{
  int id{0};
  estimator::AgentKind kind{estimator::AgentKind::Vehicle};
  ScriptKind script{ScriptKind::ExitSpot};
  int spot_id{-1};
  double spawn_time{0.0};
  bool active{false};
  bool done{false};
  /// Rear-axle pose for vehicles, center position for pedestrians.
  geometry::Pose2d pose;
  double speed{0.0};
  Eigen::Vector2d walk_velocity{0.0, 0.0};
  planner::Trajectory path;
  std::size_t path_index{0};
  int hold_streak{0};
};

/// Ground-truth lot: initial occupancy, static obstacle points, scripted
/// agents, and the observation/prediction feeds.
///
/// Stepping order within a cycle: the ego commits its new pose first (after
/// checking ego_step_safe), then step() advances agents in id order, each
/// yielding to the ego and to already-moved agents.
class World
{
public:
  static World generate(const ScenarioConfig & cfg, std::uint64_t seed);

  const LotLayout & layout() const { return layout_; }
  const planner::VehicleParams & vehicle() const { return vehicle_; }
  const StaticIndex & statics() const { return statics_; }
  const std::vector<std::uint8_t> & truth() const { return truth_; }
  const std::vector<ScriptedAgent> & agents() const { return agents_; }
  const geometry::Pose2d & ego_start() const { return ego_start_; }
  double clock() const { return clock_; }
  double dt() const { return cfg_.dt; }
  const ScenarioConfig & config() const { return cfg_; }

  /// True when moving the ego to `next_ego` keeps the per-kind yield gates
  /// against every active agent's current and nominal next pose. `relax`
  /// loosens the gates (deadlock breaking).
  bool ego_step_safe(const geometry::Pose2d & next_ego, double relax = 0.0) const;

  /// Advances the clock and all agents; `ego_pose` is the ego's already
  /// committed pose for this step.
  void step(const geometry::Pose2d & ego_pose);

  /// Observations of all spots not fully outside the FoV, in spot-id order.
  std::vector<sensing::SpotObservation> sense(const geometry::Pose2d & ego);

  /// Oracle predictions over `horizon_steps` (plus one lookahead sample used
  /// for finite differences) for every active agent.
  std::vector<estimator::AgentPrediction> predictions(int horizon_steps) const;

  /// Clearance of the ego footprint to the closest active vehicle agent
  /// footprint; +inf when none.
  double vehicle_clearance(const geometry::Pose2d & ego) const;

  /// Clearance of the ego footprint to the closest active pedestrian disc;
  /// +inf when none.
  double pedestrian_clearance(const geometry::Pose2d & ego) const;

  double static_clearance_at(const geometry::Pose2d & ego) const;

  /// Yield gate for one agent kind: safety threshold plus margin.
  double yield_gate(estimator::AgentKind kind) const;

private:
  geometry::Pose2d agent_next_pose(const ScriptedAgent & agent) const;
  geometry::Pose2d pedestrian_next_pose(const ScriptedAgent & agent) const;
  void refresh_truth();

  ScenarioConfig cfg_;
  LotLayout layout_;
  planner::VehicleParams vehicle_;
  StaticIndex statics_;
  std::vector<std::uint8_t> truth_;
  std::vector<std::uint8_t> static_car_;  // spot has a never-moving parked car
  std::vector<ScriptedAgent> agents_;
  geometry::Pose2d ego_start_;
  double clock_{0.0};
  common::Rng sensor_rng_{0};
};

}  // namespace avp::sim

#endif  // AVP__SIM__WORLD_HPP_
