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

#include "avp/sim/world.hpp"

#include "avp/planner/collision.hpp"
#include "avp/planner/hybrid_astar.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace avp::sim
{
namespace
{

constexpr double kAgentAgentGate = 0.3;
constexpr double kSpawnMargin = 0.3;
constexpr int kHoldStreakLimit = 30;
constexpr double kHoldStreakRelax = 0.03;
constexpr double kMinPedestrianSpeed = 0.15;

void append_outline(
  const geometry::Footprint & footprint, const geometry::Pose2d & pose, double spacing,
  std::vector<Eigen::Vector2d> & points)
{
  const auto corners = footprint.corners(pose);
  for (int e = 0; e < 4; ++e) {
    const Eigen::Vector2d & a = corners[static_cast<std::size_t>(e)];
    const Eigen::Vector2d & b = corners[static_cast<std::size_t>((e + 1) % 4)];
    const double len = (b - a).norm();
    const int n = std::max(1, static_cast<int>(std::ceil(len / spacing)));
    for (int i = 0; i < n; ++i) {
      points.push_back(a + (b - a) * (static_cast<double>(i) / n));
    }
  }
}

planner::GridParams agent_grid()
{
  planner::GridParams grid;
  grid.max_nodes = 120000;
  // Scripted routes only need to look plausible; a slightly greedy heuristic
  // narrows the search and the analytic goal expansion still lands them
  // exactly.
  grid.heuristic_weight = 1.5;
  return grid;
}

}  // namespace

double World::yield_gate(estimator::AgentKind kind) const
{
  return kind == estimator::AgentKind::Vehicle ? 0.55 : 0.95;
}

World World::generate(const ScenarioConfig & cfg, std::uint64_t seed)
{
  World world;
  world.cfg_ = cfg;
  world.layout_ = LotLayout::build(cfg.lot);
  world.sensor_rng_ = common::Rng::derive(seed, 2);
  common::Rng rng = common::Rng::derive(seed, 1);

  const auto & layout = world.layout_;
  const int n_spots = static_cast<int>(layout.spots().size());

  std::vector<std::uint8_t> forced(static_cast<std::size_t>(n_spots), 0);
  std::vector<std::uint8_t> forced_value(static_cast<std::size_t>(n_spots), 0);
  bool any_forced_vacant = false;
  for (const auto & ov : cfg.occupancy_overrides) {
    if (ov.spot_id < 0 || ov.spot_id >= n_spots) {
      throw std::invalid_argument("occupancy override references an unknown spot");
    }
    forced[static_cast<std::size_t>(ov.spot_id)] = 1;
    forced_value[static_cast<std::size_t>(ov.spot_id)] = ov.occupied ? 1 : 0;
    any_forced_vacant = any_forced_vacant || !ov.occupied;
  }
  // Exit scripts need their spot occupied, enter scripts need it vacant.
  for (const auto & script : cfg.explicit_agents) {
    if (script.script == ScriptKind::PedestrianWalk) {
      continue;
    }
    if (script.spot_id < 0 || script.spot_id >= n_spots) {
      throw std::invalid_argument("agent script references an unknown spot");
    }
    forced[static_cast<std::size_t>(script.spot_id)] = 1;
    const bool occupied = script.script == ScriptKind::ExitSpot;
    forced_value[static_cast<std::size_t>(script.spot_id)] = occupied ? 1 : 0;
    any_forced_vacant = any_forced_vacant || !occupied;
  }

  double min_ramp = 1.0;
  for (int r = 0; r < cfg.lot.rows; ++r) {
    min_ramp = std::min(min_ramp, layout.occupancy_probability(r, cfg.occupancy_near, cfg.occupancy_far));
  }
  const bool saturated = min_ramp >= 1.0 && !any_forced_vacant;

  auto & truth = world.truth_;
  truth.assign(static_cast<std::size_t>(n_spots), 0);
  bool have_vacancy = false;
  for (int attempt = 0; attempt < 100 && !have_vacancy; ++attempt) {
    common::Rng occ_rng = common::Rng::derive(seed, 16 + static_cast<std::uint64_t>(attempt));
    for (int s = 0; s < n_spots; ++s) {
      if (forced[static_cast<std::size_t>(s)]) {
        truth[static_cast<std::size_t>(s)] = forced_value[static_cast<std::size_t>(s)];
        continue;
      }
      const double p =
        layout.occupancy_probability(layout.spot_row(s), cfg.occupancy_near, cfg.occupancy_far);
      truth[static_cast<std::size_t>(s)] = occ_rng.bernoulli(p) ? 1 : 0;
    }
    have_vacancy =
      std::any_of(truth.begin(), truth.end(), [](std::uint8_t t) { return t == 0; });
    if (saturated) {
      break;
    }
  }
  if (!have_vacancy && !saturated) {
    throw std::invalid_argument("no vacant spot after 100 occupancy attempts");
  }

  // Ego start.
  switch (cfg.ego_start.mode) {
    case EgoStart::Mode::Pose:
      world.ego_start_ = cfg.ego_start.pose;
      break;
    case EgoStart::Mode::Entrance:
      world.ego_start_ = layout.entrance_pose();
      break;
    case EgoStart::Mode::Randomized: {
      if (rng.bernoulli(0.5)) {
        world.ego_start_ = layout.entrance_pose();
      } else {
        const int pairs = cfg.lot.rows / 2;
        const int aisle = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(pairs + 1)));
        const bool eastbound = rng.bernoulli(0.5);
        const double cy = aisle * (cfg.lot.road_width + 2.0 * cfg.lot.spot_length) +
                          0.5 * cfg.lot.road_width;
        const double lane = 0.25 * cfg.lot.road_width;
        const double x = rng.uniform(0.3 * layout.width(), 0.7 * layout.width());
        world.ego_start_ = {x, cy + (eastbound ? -lane : lane), eastbound ? 0.0 : M_PI};
      }
      break;
    }
  }

  // Assemble the agent roster: explicit scripts first, then sampled ones.
  std::vector<AgentScript> roster = cfg.explicit_agents;
  std::vector<std::uint8_t> claimed(static_cast<std::size_t>(n_spots), 0);
  for (const auto & script : cfg.explicit_agents) {
    if (script.script != ScriptKind::PedestrianWalk) {
      claimed[static_cast<std::size_t>(script.spot_id)] = 1;
    }
  }
  auto pick_spot = [&](bool occupied, common::Rng & r) -> int {
    std::vector<int> pool;
    for (int s = 0; s < n_spots; ++s) {
      if (claimed[static_cast<std::size_t>(s)] || forced[static_cast<std::size_t>(s)]) {
        continue;
      }
      if ((truth[static_cast<std::size_t>(s)] != 0) == occupied) {
        pool.push_back(s);
      }
    }
    if (pool.empty()) {
      return -1;
    }
    return pool[r.uniform_int(pool.size())];
  };
  for (int i = 0; i < cfg.vehicle_agents; ++i) {
    AgentScript script;
    script.kind = estimator::AgentKind::Vehicle;
    const bool exit = rng.bernoulli(0.5);
    int spot = pick_spot(exit, rng);
    if (spot < 0) {
      spot = pick_spot(!exit, rng);
      if (spot < 0) {
        continue;
      }
      script.script = exit ? ScriptKind::EnterSpot : ScriptKind::ExitSpot;
    } else {
      script.script = exit ? ScriptKind::ExitSpot : ScriptKind::EnterSpot;
    }
    script.spot_id = spot;
    claimed[static_cast<std::size_t>(spot)] = 1;
    script.spawn_time = rng.uniform(2.0, 30.0);
    roster.push_back(script);
  }
  for (int i = 0; i < cfg.pedestrian_agents; ++i) {
    AgentScript script;
    script.kind = estimator::AgentKind::Pedestrian;
    script.script = ScriptKind::PedestrianWalk;
    Eigen::Vector2d start{0.0, 0.0};
    bool placed = false;
    for (int tries = 0; tries < 200 && !placed; ++tries) {
      start = {rng.uniform(0.0, layout.width()), rng.uniform(0.0, layout.height())};
      const double ego_gap =
        geometry::point_to_footprint_distance(start, world.ego_start_, world.vehicle_.footprint());
      placed = layout.on_road(start) &&
               ego_gap > world.yield_gate(estimator::AgentKind::Pedestrian) + kSpawnMargin;
    }
    if (!placed) {
      continue;
    }
    Eigen::Vector2d velocity{0.0, 0.0};
    do {
      velocity = {rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5)};
    } while (velocity.norm() < kMinPedestrianSpeed);
    script.start = start;
    script.velocity = velocity;
    roster.push_back(script);
  }

  // Static parked cars fill occupied spots that no exit script claims.
  world.static_car_.assign(static_cast<std::size_t>(n_spots), 0);
  std::vector<std::uint8_t> exit_claim(static_cast<std::size_t>(n_spots), 0);
  for (const auto & script : roster) {
    if (script.script == ScriptKind::ExitSpot) {
      exit_claim[static_cast<std::size_t>(script.spot_id)] = 1;
    }
  }
  std::vector<Eigen::Vector2d> static_points = layout.boundary_points();
  const geometry::Footprint car = world.vehicle_.footprint();
  for (int s = 0; s < n_spots; ++s) {
    if (truth[static_cast<std::size_t>(s)] && !exit_claim[static_cast<std::size_t>(s)]) {
      world.static_car_[static_cast<std::size_t>(s)] = 1;
      append_outline(
        car, layout.parked_goal(s, car), cfg.lot.boundary_spacing, static_points);
    }
  }
  world.statics_.rebuild(
    static_points, {0.0, 0.0}, {layout.width(), layout.height()});

  // Plan vehicle routes. Each plan also sees the parked cars of other exit
  // scripts so routes do not thread through them.
  const geometry::Pose2d gate_pose = layout.entrance_pose();
  int next_id = 0;
  for (const auto & script : roster) {
    ScriptedAgent agent;
    agent.id = next_id;
    agent.kind = script.kind;
    agent.script = script.script;
    agent.spot_id = script.spot_id;
    agent.spawn_time = script.spawn_time;

    if (script.script == ScriptKind::PedestrianWalk) {
      const Eigen::Vector2d v = *script.velocity;
      agent.pose = {script.start->x(), script.start->y(), std::atan2(v.y(), v.x())};
      agent.walk_velocity = v;
      agent.active = true;
      agent.id = next_id++;
      world.agents_.push_back(std::move(agent));
      continue;
    }

    std::vector<Eigen::Vector2d> plan_points = static_points;
    for (const auto & other : roster) {
      if (&other != &script && other.script == ScriptKind::ExitSpot) {
        append_outline(
          car, layout.parked_goal(other.spot_id, car), cfg.lot.boundary_spacing, plan_points);
      }
    }
    StaticIndex plan_statics;
    plan_statics.rebuild(plan_points, {0.0, 0.0}, {layout.width(), layout.height()});

    const geometry::Pose2d parked = layout.parked_goal(script.spot_id, car);
    planner::SearchResult found;
    try {
      if (script.script == ScriptKind::ExitSpot) {
        found = planner::hybrid_astar(
          parked, gate_pose, true, world.vehicle_, plan_statics, agent_grid());
      } else {
        const geometry::Pose2d entry = script.entry_pose.value_or(gate_pose);
        found =
          planner::hybrid_astar(entry, parked, true, world.vehicle_, plan_statics, agent_grid());
      }
    } catch (const planner::StartInCollision &) {
      found.feasible = false;
    }
    if (!found.feasible) {
      continue;
    }
    agent.path = std::move(found.trajectory);
    agent.pose = agent.path.states.front().pose;
    agent.active = script.script == ScriptKind::ExitSpot;
    agent.id = next_id++;
    world.agents_.push_back(std::move(agent));
  }

  world.refresh_truth();
  return world;
}

void World::refresh_truth()
{
  const int n_spots = static_cast<int>(layout_.spots().size());
  const geometry::Footprint car = vehicle_.footprint();
  for (int s = 0; s < n_spots; ++s) {
    truth_[static_cast<std::size_t>(s)] = static_car_[static_cast<std::size_t>(s)];
  }
  for (const auto & agent : agents_) {
    if (!agent.active || agent.kind != estimator::AgentKind::Vehicle) {
      continue;
    }
    const Eigen::Vector2d center = car.center(agent.pose);
    for (const auto & spot : layout_.spots()) {
      if (spot.contains(center, 0.0)) {
        truth_[static_cast<std::size_t>(spot.id)] = 1;
        break;
      }
    }
  }
}

geometry::Pose2d World::pedestrian_next_pose(const ScriptedAgent & agent) const
{
  Eigen::Vector2d v = agent.walk_velocity;
  Eigen::Vector2d next = agent.pose.position() + cfg_.dt * v;
  const double margin = 0.3;
  if (next.x() < margin || next.x() > layout_.width() - margin) {
    v.x() = -v.x();
  }
  if (next.y() < margin || next.y() > layout_.height() - margin) {
    v.y() = -v.y();
  }
  next = agent.pose.position() + cfg_.dt * v;
  return {next.x(), next.y(), std::atan2(v.y(), v.x())};
}

geometry::Pose2d World::agent_next_pose(const ScriptedAgent & agent) const
{
  if (agent.kind == estimator::AgentKind::Pedestrian) {
    return pedestrian_next_pose(agent);
  }
  if (!agent.active || agent.done) {
    return agent.pose;
  }
  if (agent.script == ScriptKind::ExitSpot && clock_ < agent.spawn_time) {
    return agent.pose;
  }
  if (agent.path_index + 1 < agent.path.states.size()) {
    return agent.path.states[agent.path_index + 1].pose;
  }
  return agent.pose;
}

bool World::ego_step_safe(const geometry::Pose2d & next_ego, double relax) const
{
  const geometry::Footprint ego_fp = vehicle_.footprint();
  for (const auto & agent : agents_) {
    if (!agent.active) {
      continue;
    }
    const double gate = yield_gate(agent.kind) - relax;
    if (agent.kind == estimator::AgentKind::Vehicle) {
      const geometry::Pose2d positions[2] = {agent.pose, agent_next_pose(agent)};
      for (const auto & p : positions) {
        if (
          geometry::footprint_to_footprint_distance(next_ego, ego_fp, p, ego_fp) < gate)
        {
          return false;
        }
      }
    } else {
      const geometry::Pose2d positions[2] = {agent.pose, agent_next_pose(agent)};
      for (const auto & p : positions) {
        const double d =
          geometry::point_to_footprint_distance(p.position(), next_ego, ego_fp) - 0.3;
        if (d < gate) {
          return false;
        }
      }
    }
  }
  return true;
}

void World::step(const geometry::Pose2d & ego_pose)
{
  clock_ += cfg_.dt;
  const geometry::Footprint ego_fp = vehicle_.footprint();

  for (auto & agent : agents_) {
    if (agent.done) {
      continue;
    }

    if (agent.kind == estimator::AgentKind::Pedestrian) {
      if (!agent.active) {
        continue;
      }
      const geometry::Pose2d next = pedestrian_next_pose(agent);
      const double relax = agent.hold_streak > kHoldStreakLimit ? kHoldStreakRelax : 0.0;
      const double ego_gap =
        geometry::point_to_footprint_distance(next.position(), ego_pose, ego_fp) - 0.3;
      if (ego_gap >= yield_gate(agent.kind) - relax) {
        agent.walk_velocity = next.heading_vector() * agent.walk_velocity.norm();
        agent.pose = next;
        agent.hold_streak = 0;
      } else {
        ++agent.hold_streak;
      }
      continue;
    }

    // Vehicles.
    if (!agent.active) {
      if (agent.script == ScriptKind::EnterSpot && clock_ >= agent.spawn_time) {
        const geometry::Pose2d spawn = agent.path.states.front().pose;
        bool clear = geometry::footprint_to_footprint_distance(
                       spawn, ego_fp, ego_pose, ego_fp) >=
                     yield_gate(agent.kind) + kSpawnMargin;
        for (const auto & other : agents_) {
          if (!clear) {
            break;
          }
          if (other.id == agent.id || !other.active) {
            continue;
          }
          if (other.kind == estimator::AgentKind::Vehicle) {
            clear = geometry::footprint_to_footprint_distance(
                      spawn, ego_fp, other.pose, ego_fp) >= kAgentAgentGate + kSpawnMargin;
          } else {
            clear = geometry::point_to_footprint_distance(
                      other.pose.position(), spawn, ego_fp) -
                      0.3 >=
                    kAgentAgentGate + kSpawnMargin;
          }
        }
        if (clear) {
          agent.active = true;
          agent.pose = spawn;
          agent.path_index = 0;
        }
      }
      continue;
    }

    if (agent.script == ScriptKind::ExitSpot && clock_ < agent.spawn_time) {
      agent.speed = 0.0;
      continue;
    }
    if (agent.path_index + 1 >= agent.path.states.size()) {
      if (agent.script == ScriptKind::ExitSpot) {
        agent.active = false;
        agent.done = true;
      } else {
        agent.speed = 0.0;
      }
      continue;
    }

    const geometry::Pose2d next = agent.path.states[agent.path_index + 1].pose;
    const double relax = agent.hold_streak > kHoldStreakLimit ? kHoldStreakRelax : 0.0;
    bool clear = geometry::footprint_to_footprint_distance(next, ego_fp, ego_pose, ego_fp) >=
                 yield_gate(agent.kind) - relax;
    for (const auto & other : agents_) {
      if (!clear) {
        break;
      }
      if (other.id == agent.id || !other.active) {
        continue;
      }
      if (other.kind == estimator::AgentKind::Vehicle) {
        clear = geometry::footprint_to_footprint_distance(next, ego_fp, other.pose, ego_fp) >=
                kAgentAgentGate;
      } else {
        clear =
          geometry::point_to_footprint_distance(other.pose.position(), next, ego_fp) - 0.3 >=
          kAgentAgentGate;
      }
    }
    if (clear) {
      agent.speed = agent.path.states[agent.path_index].v;
      agent.pose = next;
      ++agent.path_index;
      agent.hold_streak = 0;
    } else {
      agent.speed = 0.0;
      ++agent.hold_streak;
    }
  }

  refresh_truth();
}

std::vector<sensing::SpotObservation> World::sense(const geometry::Pose2d & ego)
{
  std::vector<sensing::SpotObservation> out;
  const sensing::SensingParams sensing_params;
  for (const auto & spot : layout_.spots()) {
    const double d = geometry::scaled_shifted_distance(ego, spot.center, sensing_params.fov);
    const geometry::ViewClass view = geometry::classify_view(ego, spot.center, sensing_params.fov);
    if (view == geometry::ViewClass::Unobserved) {
      continue;
    }
    sensing::SpotObservation obs;
    obs.spot_id = spot.id;
    obs.view = view;
    obs.fov_distance = d;
    const int truth_z = truth_[static_cast<std::size_t>(spot.id)] ? 1 : 0;
    if (view == geometry::ViewClass::Full) {
      obs.z = truth_z;
      obs.confidence = 1.0;
    } else {
      obs.confidence = sensing::observation_confidence(d, sensing_params);
      obs.z = sensor_rng_.bernoulli(obs.confidence) ? truth_z : 1 - truth_z;
    }
    out.push_back(obs);
  }
  return out;
}

std::vector<estimator::AgentPrediction> World::predictions(int horizon_steps) const
{
  std::vector<estimator::AgentPrediction> out;
  const estimator::InteractionParams interaction;
  const geometry::Footprint car = vehicle_.footprint();
  const int n = horizon_steps + 2;

  for (const auto & agent : agents_) {
    if (!agent.active) {
      continue;
    }
    estimator::AgentPrediction pred;
    pred.agent_id = agent.id;
    pred.kind = agent.kind;
    pred.visible = true;

    std::vector<geometry::Pose2d> poses;
    poses.reserve(static_cast<std::size_t>(n));
    if (agent.kind == estimator::AgentKind::Pedestrian) {
      for (int k = 0; k < n; ++k) {
        const Eigen::Vector2d p = agent.pose.position() + k * cfg_.dt * agent.walk_velocity;
        poses.push_back({p.x(), p.y(), agent.pose.theta});
      }
    } else {
      int wait = 0;
      if (agent.script == ScriptKind::ExitSpot && clock_ < agent.spawn_time) {
        wait = static_cast<int>(std::ceil((agent.spawn_time - clock_) / cfg_.dt));
      }
      std::size_t idx = agent.path_index;
      for (int k = 0; k < n; ++k) {
        poses.push_back(agent.path.states[idx].pose);
        if (k + 1 >= wait && idx + 1 < agent.path.states.size()) {
          ++idx;
        }
      }
    }

    pred.mean.resize(static_cast<std::size_t>(n));
    pred.heading.resize(static_cast<std::size_t>(n));
    pred.cov.resize(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
      const auto & pose = poses[static_cast<std::size_t>(k)];
      pred.heading[static_cast<std::size_t>(k)] = pose.theta;
      pred.mean[static_cast<std::size_t>(k)] =
        agent.kind == estimator::AgentKind::Vehicle ? car.center(pose) : pose.position();
    }
    pred.cov[0] = estimator::initial_covariance(
      agent.kind, vehicle_.length, vehicle_.width, interaction);
    for (int k = 1; k < n; ++k) {
      pred.cov[static_cast<std::size_t>(k)] = estimator::propagate_covariance(
        pred.cov[static_cast<std::size_t>(k) - 1], pred.heading[static_cast<std::size_t>(k)],
        interaction.process_noise);
    }
    pred.velocity.resize(static_cast<std::size_t>(n));
    pred.sigma_v.resize(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
      const std::size_t k1 = std::min<std::size_t>(static_cast<std::size_t>(k) + 1, n - 1);
      pred.velocity[static_cast<std::size_t>(k)] =
        (pred.mean[k1] - pred.mean[static_cast<std::size_t>(k)]) / cfg_.dt;
      const Eigen::Matrix2d sv = estimator::velocity_covariance(
        pred.cov[k1], pred.cov[static_cast<std::size_t>(k)], interaction.rho, cfg_.dt);
      pred.sigma_v[static_cast<std::size_t>(k)] = std::sqrt(0.5 * sv.trace());
    }

    const int keep = horizon_steps + 1;
    pred.mean.resize(static_cast<std::size_t>(keep));
    pred.heading.resize(static_cast<std::size_t>(keep));
    pred.cov.resize(static_cast<std::size_t>(keep));
    pred.velocity.resize(static_cast<std::size_t>(keep));
    pred.sigma_v.resize(static_cast<std::size_t>(keep));
    out.push_back(std::move(pred));
  }
  return out;
}

double World::vehicle_clearance(const geometry::Pose2d & ego) const
{
  const geometry::Footprint fp = vehicle_.footprint();
  double best = std::numeric_limits<double>::infinity();
  for (const auto & agent : agents_) {
    if (!agent.active || agent.kind != estimator::AgentKind::Vehicle) {
      continue;
    }
    best = std::min(best, geometry::footprint_to_footprint_distance(ego, fp, agent.pose, fp));
  }
  return best;
}

double World::pedestrian_clearance(const geometry::Pose2d & ego) const
{
  const geometry::Footprint fp = vehicle_.footprint();
  double best = std::numeric_limits<double>::infinity();
  for (const auto & agent : agents_) {
    if (!agent.active || agent.kind != estimator::AgentKind::Pedestrian) {
      continue;
    }
    best = std::min(
      best, geometry::point_to_footprint_distance(agent.pose.position(), ego, fp) - 0.3);
  }
  return best;
}

double World::static_clearance_at(const geometry::Pose2d & ego) const
{
  return planner::static_clearance(ego, vehicle_.footprint(), statics_);
}

}  // namespace avp::sim
