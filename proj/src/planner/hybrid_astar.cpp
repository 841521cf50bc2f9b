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

#include "avp/planner/hybrid_astar.hpp"

#include "avp/planner/collision.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <queue>
#include <unordered_map>
#include <utility>
#include <vector>

namespace avp::planner
{
namespace
{

struct GoalSpec
{
  Eigen::Vector2d position;
  double heading;
};

struct Node
{
  geometry::Pose2d pose;
  double v{0.0};
  double delta{0.0};
  int parent{-1};
  int steps{0};
  double g{0.0};
};

struct OpenEntry
{
  double f;
  double g;
  std::uint64_t seq;
  int node;
};

struct OpenOrder
{
  bool operator()(const OpenEntry & a, const OpenEntry & b) const
  {
    if (a.f != b.f) {
      return a.f > b.f;
    }
    if (a.g != b.g) {
      return a.g < b.g;
    }
    return a.seq > b.seq;
  }
};

// Analytic goal expansion: constant-curvature word families (turn-straight-
// turn and turn-turn-turn), tried forward and in reverse gear from promising
// nodes. A collision-free word ends the search with an exact goal pose, which
// the lattice alone cannot deliver once the goal tolerance is finer than the
// dedup grid.

struct ShotSegment
{
  int turn{0};  // +1 left arc, -1 right arc, 0 straight
  double length{0.0};
};

struct ShotWord
{
  std::array<ShotSegment, 3> segments;
  double total{0.0};
};

double mod_2pi(double a)
{
  constexpr double two_pi = 2.0 * M_PI;
  a = std::fmod(a, two_pi);
  if (a < 0.0) {
    a += two_pi;
  }
  if (a > two_pi - 1e-9) {
    a = 0.0;
  }
  return a;
}

Eigen::Vector2d turn_center(const geometry::Pose2d & pose, int turn, double radius)
{
  return pose.position() +
         turn * radius * Eigen::Vector2d{-std::sin(pose.theta), std::cos(pose.theta)};
}

void push_word(
  std::vector<ShotWord> & words, double arc1, double straight, double arc2, int s1, int s2,
  double radius)
{
  ShotWord word;
  word.segments[0] = {s1, radius * arc1};
  word.segments[1] = {0, straight};
  word.segments[2] = {s2, radius * arc2};
  word.total = radius * (arc1 + arc2) + straight;
  words.push_back(word);
}

void csc_words(
  const geometry::Pose2d & start, const geometry::Pose2d & goal, double radius,
  std::vector<ShotWord> & words)
{
  for (const int s1 : {1, -1}) {
    for (const int s2 : {1, -1}) {
      const Eigen::Vector2d c1 = turn_center(start, s1, radius);
      const Eigen::Vector2d c2 = turn_center(goal, s2, radius);
      const Eigen::Vector2d d = c2 - c1;
      const double dist = d.norm();
      double phi = 0.0;
      double straight = 0.0;
      if (s1 == s2) {
        if (dist < 1e-12) {
          phi = start.theta;
        } else {
          phi = std::atan2(d.y(), d.x());
        }
        straight = dist;
      } else {
        if (dist < 2.0 * radius) {
          continue;
        }
        const double psi = std::atan2(d.y(), d.x());
        phi = psi + std::asin(std::clamp(2.0 * s1 * radius / dist, -1.0, 1.0));
        straight = d.dot(Eigen::Vector2d{std::cos(phi), std::sin(phi)});
        if (straight < 0.0) {
          continue;
        }
      }
      const double arc1 = mod_2pi(s1 * (phi - start.theta));
      const double arc2 = mod_2pi(s2 * (goal.theta - phi));
      push_word(words, arc1, straight, arc2, s1, s2, radius);
    }
  }
}

void ccc_words(
  const geometry::Pose2d & start, const geometry::Pose2d & goal, double radius,
  std::vector<ShotWord> & words)
{
  for (const int s : {1, -1}) {
    const Eigen::Vector2d c1 = turn_center(start, s, radius);
    const Eigen::Vector2d c3 = turn_center(goal, s, radius);
    const Eigen::Vector2d d = c3 - c1;
    const double dist = d.norm();
    if (dist > 4.0 * radius || dist < 1e-12) {
      continue;
    }
    const Eigen::Vector2d mid = 0.5 * (c1 + c3);
    const double h = std::sqrt(std::max(4.0 * radius * radius - 0.25 * dist * dist, 0.0));
    const Eigen::Vector2d normal = Eigen::Vector2d{-d.y(), d.x()} / dist;
    for (const double side : {1.0, -1.0}) {
      const Eigen::Vector2d c2 = mid + side * h * normal;
      const Eigen::Vector2d r1 = (c2 - c1).normalized();
      const Eigen::Vector2d r2 = (c3 - c2).normalized();
      const double phi1 = std::atan2(r1.y(), r1.x()) + s * M_PI_2;
      const double phi2 = std::atan2(r2.y(), r2.x()) + s * M_PI_2;
      const double arc1 = mod_2pi(s * (phi1 - start.theta));
      const double arc2 = mod_2pi(-s * (phi2 - phi1));
      const double arc3 = mod_2pi(s * (goal.theta - phi2));
      ShotWord word;
      word.segments[0] = {s, radius * arc1};
      word.segments[1] = {-s, radius * arc2};
      word.segments[2] = {s, radius * arc3};
      word.total = radius * (arc1 + arc2 + arc3);
      words.push_back(word);
    }
  }
}

/// Samples the poses of `word` driven from `start`, including `start` itself,
/// at steps of at most `max_step` arc length.
std::vector<geometry::Pose2d> sample_word(
  const geometry::Pose2d & start, const ShotWord & word, double radius, double max_step)
{
  std::vector<geometry::Pose2d> poses{start};
  geometry::Pose2d pose = start;
  for (const ShotSegment & seg : word.segments) {
    if (seg.length < 1e-9) {
      continue;
    }
    const int n = std::max(1, static_cast<int>(std::ceil(seg.length / max_step)));
    const double h = seg.length / n;
    for (int i = 0; i < n; ++i) {
      if (seg.turn == 0) {
        pose.x += h * std::cos(pose.theta);
        pose.y += h * std::sin(pose.theta);
      } else {
        const Eigen::Vector2d center = turn_center(pose, seg.turn, radius);
        const double sweep = seg.turn * h / radius;
        const Eigen::Vector2d arm = pose.position() - center;
        const Eigen::Vector2d rotated = geometry::rotation_matrix(sweep) * arm;
        pose.x = center.x() + rotated.x();
        pose.y = center.y() + rotated.y();
        pose.theta = geometry::normalize_angle(pose.theta + sweep);
      }
      poses.push_back(pose);
    }
  }
  return poses;
}

/// One gear-constant piece of a shot. A reversed leg is laid out from its far
/// end: driving it means tracing the word backwards in reverse gear.
struct ShotLeg
{
  ShotWord word;
  geometry::Pose2d start;
  geometry::Pose2d end;
  bool reversed{false};
};

/// Poses of `leg` in driving order (start through end inclusive), or empty
/// when the word does not actually connect the claimed endpoints.
std::vector<geometry::Pose2d> realize_leg(const ShotLeg & leg, double radius, double max_step)
{
  const geometry::Pose2d & anchor = leg.reversed ? leg.end : leg.start;
  const geometry::Pose2d & target = leg.reversed ? leg.start : leg.end;
  auto poses = sample_word(anchor, leg.word, radius, max_step);
  if (poses.size() < 2) {
    return {};
  }
  if (
    (poses.back().position() - target.position()).norm() > 1e-6 ||
    std::abs(geometry::angle_difference(poses.back().theta, target.theta)) > 1e-6)
  {
    return {};
  }
  if (leg.reversed) {
    std::reverse(poses.begin(), poses.end());
  }
  poses.front() = leg.start;
  poses.back() = leg.end;
  return poses;
}

ShotWord straight_word(double length)
{
  ShotWord word;
  word.segments[0] = {0, length};
  word.total = length;
  return word;
}

/// Tries analytic connections to every goal, shortest first: single words in
/// either gear, plus two-leg park maneuvers that stage on the goal axis and
/// finish with a straight drive in. Returns the first collision-free one as
/// states from `from` (inclusive) to the exact goal.
std::vector<TrajectoryState> analytic_shot(
  const geometry::Pose2d & from, const std::vector<GoalSpec> & goal_specs,
  const geometry::Footprint & footprint, const sim::StaticIndex & statics,
  const VehicleParams & vehicle, const GridParams & grid)
{
  const double radius = vehicle.wheelbase / std::tan(vehicle.delta_max);
  const double max_step = 0.5 * vehicle.v_max * grid.dt;

  struct Candidate
  {
    std::vector<ShotLeg> legs;
    double key{0.0};
  };
  std::vector<Candidate> candidates;

  for (const GoalSpec & spec : goal_specs) {
    const geometry::Pose2d goal{spec.position.x(), spec.position.y(), spec.heading};
    std::vector<ShotWord> words;
    csc_words(from, goal, radius, words);
    ccc_words(from, goal, radius, words);
    for (const ShotWord & word : words) {
      candidates.push_back({{{word, from, goal, false}}, word.total});
    }
    // A reverse-gear drive from here to the goal traces the same curve as a
    // forward drive from the goal back to here.
    words.clear();
    csc_words(goal, from, radius, words);
    ccc_words(goal, from, radius, words);
    for (const ShotWord & word : words) {
      candidates.push_back({{{word, from, goal, true}}, word.total});
    }

    // Staged park maneuvers: reach a pose on the goal axis, change gear, and
    // drive straight in. Only worth enumerating near the goal.
    if ((from.position() - goal.position()).norm() > 25.0) {
      continue;
    }
    const Eigen::Vector2d axis = goal.heading_vector();
    for (const double stage_m : {3.0, 5.0, 7.0}) {
      for (const int leg2_gear : {1, -1}) {
        const geometry::Pose2d stage{
          goal.x - leg2_gear * stage_m * axis.x(), goal.y - leg2_gear * stage_m * axis.y(),
          goal.theta};
        const ShotLeg leg2{straight_word(stage_m), stage, goal, leg2_gear < 0};
        for (const int leg1_gear : {1, -1}) {
          if (leg1_gear == -1 && leg2_gear == -1) {
            continue;
          }
          words.clear();
          if (leg1_gear > 0) {
            csc_words(from, stage, radius, words);
            ccc_words(from, stage, radius, words);
          } else {
            csc_words(stage, from, radius, words);
            ccc_words(stage, from, radius, words);
          }
          for (const ShotWord & word : words) {
            const double cusp = leg1_gear != leg2_gear ? 4.0 : 0.0;
            candidates.push_back(
              {{{word, from, stage, leg1_gear < 0}, leg2}, word.total + stage_m + cusp});
          }
        }
      }
    }
  }
  std::stable_sort(candidates.begin(), candidates.end(), [](const Candidate & a, const Candidate & b) {
    return a.key < b.key;
  });

  std::vector<geometry::Pose2d> poses;
  std::vector<double> gears;
  for (const Candidate & candidate : candidates) {
    poses.clear();
    gears.clear();
    bool broken = false;
    for (const ShotLeg & leg : candidate.legs) {
      auto leg_poses = realize_leg(leg, radius, max_step);
      if (leg_poses.empty()) {
        broken = true;
        break;
      }
      const std::size_t first = poses.empty() ? 0 : 1;
      for (std::size_t i = first; i < leg_poses.size(); ++i) {
        poses.push_back(leg_poses[i]);
        gears.push_back(leg.reversed ? -1.0 : 1.0);
      }
    }
    if (broken || poses.size() < 2) {
      continue;
    }
    // The goal end is the likeliest to be blocked, so vet it first.
    bool clear = true;
    const std::size_t tail_first = poses.size() > 8 ? poses.size() - 8 : 0;
    for (std::size_t i = tail_first; i < poses.size() && clear; ++i) {
      clear = has_static_clearance(poses[i], footprint, statics, grid.min_static_clearance);
    }
    for (std::size_t i = 0; i < tail_first && clear; ++i) {
      clear = has_static_clearance(poses[i], footprint, statics, grid.min_static_clearance);
    }
    if (!clear) {
      continue;
    }
    std::vector<TrajectoryState> states;
    states.reserve(poses.size());
    for (const geometry::Pose2d & pose : poses) {
      states.push_back({pose, 0.0, 0.0});
    }
    for (std::size_t i = 0; i + 1 < states.size(); ++i) {
      const double ds = (states[i + 1].pose.position() - states[i].pose.position()).norm();
      const double dth = geometry::angle_difference(states[i + 1].pose.theta, states[i].pose.theta);
      states[i].v = gears[i + 1] * ds / grid.dt;
      states[i].delta =
        ds > 1e-12 ? std::atan(vehicle.wheelbase * dth / (gears[i + 1] * ds)) : 0.0;
    }
    return states;
  }
  return {};
}

std::uint64_t state_key(const geometry::Pose2d & pose, double v, const GridParams & grid)
{
  const auto ix = static_cast<std::int64_t>(std::floor(pose.x / grid.xy_resolution)) + (1 << 20);
  const auto iy = static_cast<std::int64_t>(std::floor(pose.y / grid.xy_resolution)) + (1 << 20);
  double theta = pose.theta;
  if (theta < 0.0) {
    theta += 2.0 * M_PI;
  }
  auto itheta = static_cast<std::int64_t>(std::floor(theta / grid.heading_resolution));
  const auto bins = static_cast<std::int64_t>(std::ceil(2.0 * M_PI / grid.heading_resolution));
  itheta = ((itheta % bins) + bins) % bins;
  const std::uint64_t dir = v < 0.0 ? 0u : 1u;
  return (static_cast<std::uint64_t>(ix & 0x3FFFFF) << 42) |
         (static_cast<std::uint64_t>(iy & 0x3FFFFF) << 20) |
         (static_cast<std::uint64_t>(itheta) << 1) | dir;
}

bool matches_goal(
  const geometry::Pose2d & pose, const std::vector<GoalSpec> & goals, const GridParams & grid)
{
  for (const GoalSpec & goal : goals) {
    const double position_error = (pose.position() - goal.position).norm();
    const double heading_error = std::abs(geometry::angle_difference(pose.theta, goal.heading));
    if (
      position_error <= grid.goal_position_tolerance &&
      heading_error <= grid.goal_heading_tolerance)
    {
      return true;
    }
  }
  return false;
}

/// Obstacle-aware holonomic distance-to-goal field: a multi-source Dijkstra
/// from the goal cells over a grid whose cells must keep the vehicle's
/// inscribed radius clear. Euclidean distance alone pulls the search into
/// dead ends one parked row away from the goal; this field routes around
/// them. Cell traversability is resolved lazily against the static index.
class HolonomicField
{
public:
  HolonomicField(
    const std::vector<GoalSpec> & goals, const geometry::Pose2d & start,
    const sim::StaticIndex & statics, const geometry::Footprint & footprint,
    const Eigen::Vector2d & lo, const Eigen::Vector2d & hi, const GridParams & grid)
  : statics_(statics), origin_(lo), cell_(std::max(0.5, 3.0 * grid.xy_resolution)),
    need_(0.5 * footprint.width + grid.min_static_clearance)
  {
    nx_ = std::max(1, static_cast<int>(std::ceil((hi.x() - lo.x()) / cell_)) + 1);
    ny_ = std::max(1, static_cast<int>(std::ceil((hi.y() - lo.y()) / cell_)) + 1);
    const std::size_t n = static_cast<std::size_t>(nx_) * ny_;
    dist_.assign(n, std::numeric_limits<float>::infinity());
    traversable_.assign(n, kUnknown);

    using Entry = std::pair<float, std::size_t>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> pq;
    // Endpoint cells are open by definition: both poses passed the exact
    // footprint check, which the coarse cell-center test can contradict.
    traversable_[index_of(start.position())] = kOpen;
    for (const GoalSpec & goal : goals) {
      const std::size_t i = index_of(goal.position);
      dist_[i] = 0.0F;
      traversable_[i] = kOpen;
      pq.push({0.0F, i});
    }
    while (!pq.empty()) {
      const auto [d, i] = pq.top();
      pq.pop();
      if (d > dist_[i]) {
        continue;
      }
      const int cx = static_cast<int>(i) % nx_;
      const int cy = static_cast<int>(i) / nx_;
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          if (dx == 0 && dy == 0) {
            continue;
          }
          const int jx = cx + dx;
          const int jy = cy + dy;
          if (jx < 0 || jx >= nx_ || jy < 0 || jy >= ny_) {
            continue;
          }
          const std::size_t j = static_cast<std::size_t>(jy) * nx_ + jx;
          const float nd =
            d + static_cast<float>(cell_ * (dx != 0 && dy != 0 ? M_SQRT2 : 1.0));
          if (nd < dist_[j] && open(j, jx, jy)) {
            dist_[j] = nd;
            pq.push({nd, j});
          }
        }
      }
    }
  }

  /// Grid distance in meters, or +inf where the goal is not reachable.
  double query(const Eigen::Vector2d & p) const
  {
    const int cx = std::clamp(
      static_cast<int>(std::floor((p.x() - origin_.x()) / cell_)), 0, nx_ - 1);
    const int cy = std::clamp(
      static_cast<int>(std::floor((p.y() - origin_.y()) / cell_)), 0, ny_ - 1);
    return dist_[static_cast<std::size_t>(cy) * nx_ + cx];
  }

private:
  static constexpr std::int8_t kUnknown = 0;
  static constexpr std::int8_t kOpen = 1;
  static constexpr std::int8_t kBlocked = 2;

  std::size_t index_of(const Eigen::Vector2d & p) const
  {
    const int cx = std::clamp(
      static_cast<int>(std::floor((p.x() - origin_.x()) / cell_)), 0, nx_ - 1);
    const int cy = std::clamp(
      static_cast<int>(std::floor((p.y() - origin_.y()) / cell_)), 0, ny_ - 1);
    return static_cast<std::size_t>(cy) * nx_ + cx;
  }

  bool open(std::size_t j, int jx, int jy)
  {
    if (traversable_[j] == kUnknown) {
      const Eigen::Vector2d c{
        origin_.x() + (jx + 0.5) * cell_, origin_.y() + (jy + 0.5) * cell_};
      bool is_open;
      if (statics_.distance_lower_bound(c) >= need_) {
        is_open = true;
      } else if (statics_.distance_upper_bound(c) < need_) {
        is_open = false;
      } else {
        is_open = statics_.nearest_distance(c, need_ + 0.01) >= need_;
      }
      traversable_[j] = is_open ? kOpen : kBlocked;
    }
    return traversable_[j] == kOpen;
  }

  const sim::StaticIndex & statics_;
  Eigen::Vector2d origin_;
  double cell_;
  double need_;
  int nx_{0};
  int ny_{0};
  std::vector<float> dist_;
  std::vector<std::int8_t> traversable_;
};

double heuristic(
  const geometry::Pose2d & pose, const std::vector<GoalSpec> & goals,
  const HolonomicField & field, const VehicleParams & vehicle, const GridParams & grid)
{
  double euclid = std::numeric_limits<double>::infinity();
  for (const GoalSpec & goal : goals) {
    euclid = std::min(euclid, (pose.position() - goal.position).norm());
  }
  const double routed = field.query(pose.position());
  const double best = std::isfinite(routed) ? std::max(euclid, routed) : euclid;
  return best / (vehicle.v_max * grid.dt) * grid.heuristic_weight;
}

std::vector<double> steering_set(const VehicleParams & vehicle, const GridParams & grid)
{
  std::vector<double> out;
  const int n = std::max(grid.steering_samples, 2);
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    out.push_back(-vehicle.delta_max + 2.0 * vehicle.delta_max * i / (n - 1));
  }
  return out;
}

std::vector<double> velocity_set(const VehicleParams & vehicle, const GridParams & grid)
{
  std::vector<double> out;
  const int n = std::max(grid.velocity_samples, 2);
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double v = -vehicle.v_max + 2.0 * vehicle.v_max * i / (n - 1);
    if (std::abs(v) > 1e-9) {
      out.push_back(v);
    }
  }
  return out;
}

Trajectory extract_trajectory(
  const std::vector<Node> & nodes, int goal_index, const VehicleParams & vehicle,
  const GridParams & grid)
{
  std::vector<int> chain;
  for (int i = goal_index; i >= 0; i = nodes[i].parent) {
    chain.push_back(i);
  }
  std::reverse(chain.begin(), chain.end());

  Trajectory trajectory;
  trajectory.states.push_back({nodes[chain.front()].pose, 0.0, 0.0});
  for (std::size_t k = 1; k < chain.size(); ++k) {
    const Node & node = nodes[chain[k]];
    geometry::Pose2d pose = nodes[node.parent].pose;
    for (int j = 0; j < node.steps; ++j) {
      trajectory.states.back().v = node.v;
      trajectory.states.back().delta = node.delta;
      pose = bicycle_step(pose, node.v, node.delta, grid.dt, vehicle);
      trajectory.states.push_back({pose, 0.0, 0.0});
    }
  }
  return trajectory;
}

}  // namespace

SearchResult hybrid_astar(
  const geometry::Pose2d & start, const geometry::Pose2d & goal, bool allow_opposite_heading,
  const VehicleParams & vehicle, const sim::StaticIndex & statics, const GridParams & grid)
{
  const geometry::Footprint footprint = vehicle.footprint();
  if (!has_static_clearance(start, footprint, statics, grid.min_static_clearance)) {
    throw StartInCollision{"start pose violates static clearance"};
  }

  std::vector<GoalSpec> goals;
  goals.push_back({goal.position(), goal.theta});
  if (allow_opposite_heading) {
    // Same footprint placement entered rear-first: the anchor mirrors across
    // the footprint center.
    const Eigen::Vector2d center =
      goal.position() + footprint.center_offset * goal.heading_vector();
    const double flipped = geometry::normalize_angle(goal.theta + M_PI);
    goals.push_back({2.0 * center - goal.position(), flipped});
  }
  {
    bool any_goal_clear = false;
    for (const GoalSpec & g : goals) {
      const geometry::Pose2d pose{g.position.x(), g.position.y(), g.heading};
      if (has_static_clearance(pose, footprint, statics, grid.min_static_clearance)) {
        any_goal_clear = true;
      }
    }
    if (!any_goal_clear) {
      return {};
    }
  }

  SearchResult result;
  if (matches_goal(start, goals, grid)) {
    result.feasible = true;
    result.trajectory.states.push_back({start, 0.0, 0.0});
    return result;
  }

  const Eigen::Vector2d margin{2.0 * footprint.length, 2.0 * footprint.length};
  const Eigen::Vector2d lo = statics.bounds_min() - margin;
  const Eigen::Vector2d hi = statics.bounds_max() + margin;

  std::vector<Node> nodes;
  nodes.reserve(4096);
  nodes.push_back({start, 0.0, 0.0, -1, 0, 0.0});

  if (matches_goal(start, goals, grid)) {
    result.feasible = true;
    result.trajectory = extract_trajectory(nodes, 0, vehicle, grid);
    result.expanded = 1;
    return result;
  }

  // A direct shot from the start settles most queries without touching the
  // lattice, so the routed heuristic field is only built once that fails.
  {
    auto tail = analytic_shot(start, goals, footprint, statics, vehicle, grid);
    if (!tail.empty()) {
      result.feasible = true;
      result.trajectory = extract_trajectory(nodes, 0, vehicle, grid);
      auto & states = result.trajectory.states;
      states.back().v = tail.front().v;
      states.back().delta = tail.front().delta;
      states.insert(states.end(), tail.begin() + 1, tail.end());
      result.expanded = 1;
      return result;
    }
  }

  std::unordered_map<std::uint64_t, double> best_g;
  best_g.reserve(4096);
  best_g[state_key(start, 0.0, grid)] = 0.0;

  const HolonomicField field(goals, start, statics, footprint, lo, hi, grid);

  // The field routes a disc of the vehicle's clearance width, so a start it
  // cannot reach is unreachable for the full footprint too.
  if (!std::isfinite(field.query(start.position()))) {
    result.expanded = 1;
    return result;
  }

  std::priority_queue<OpenEntry, std::vector<OpenEntry>, OpenOrder> open;
  std::uint64_t seq = 0;
  open.push({heuristic(start, goals, field, vehicle, grid), 0.0, seq++, 0});

  const std::vector<double> steerings = steering_set(vehicle, grid);
  const std::vector<double> coarse_velocities = velocity_set(vehicle, grid);
  const std::vector<double> fine_velocities{
    -vehicle.v_max / 2.0, -vehicle.v_max / 4.0, vehicle.v_max / 4.0, vehicle.v_max / 2.0};
  const double fine_radius = 2.5;
  // Reverse gear is for maneuvering: docking near the goal, backing out of a
  // blocked pose anywhere else.
  constexpr double kReverseRadius = 10.0;

  std::uint64_t pops = 0;
  while (!open.empty()) {
    const OpenEntry entry = open.top();
    open.pop();
    const Node current = nodes[entry.node];
    const auto best = best_g.find(state_key(current.pose, current.v, grid));
    if (best != best_g.end() && entry.g > best->second + 1e-9) {
      continue;
    }
    ++pops;

    if (matches_goal(current.pose, goals, grid)) {
      result.feasible = true;
      result.trajectory = extract_trajectory(nodes, entry.node, vehicle, grid);
      result.expanded = nodes.size();
      return result;
    }

    double near_goal = std::numeric_limits<double>::infinity();
    for (const GoalSpec & g : goals) {
      near_goal = std::min(near_goal, (current.pose.position() - g.position).norm());
    }

    // Shots get more frequent as the goal closes in.
    const std::uint64_t shot_period =
      std::clamp<std::uint64_t>(static_cast<std::uint64_t>(near_goal), 1, 32);
    if (pops % shot_period == 0) {
      auto tail = analytic_shot(current.pose, goals, footprint, statics, vehicle, grid);
      if (!tail.empty()) {
        result.feasible = true;
        result.trajectory = extract_trajectory(nodes, entry.node, vehicle, grid);
        auto & states = result.trajectory.states;
        states.back().v = tail.front().v;
        states.back().delta = tail.front().delta;
        states.insert(states.end(), tail.begin() + 1, tail.end());
        result.expanded = nodes.size();
        return result;
      }
    }
    if (nodes.size() >= grid.max_nodes) {
      break;
    }

    const std::vector<double> & velocities =
      near_goal <= fine_radius ? fine_velocities : coarse_velocities;
    // Longer primitives cover open distance cheaply; short ones give the
    // docking zone its maneuvering resolution.
    const int substeps =
      near_goal > kReverseRadius ? 4 * std::max(grid.primitive_steps, 1)
                                 : std::max(grid.primitive_steps, 1);

    bool any_forward = false;
    for (const int pass : {0, 1}) {
      // Far from the goal, reverse only opens up when driving forward is
      // blocked or the node is already mid-reverse, so a back-out maneuver
      // can keep extending until a forward turn actually clears.
      if (pass == 1 && near_goal > kReverseRadius && current.v >= 0.0 && any_forward) {
        break;
      }
      for (const double v : velocities) {
        if ((pass == 0) != (v > 0.0)) {
          continue;
        }
        for (const double delta : steerings) {
          geometry::Pose2d pose = current.pose;
          double cost = current.g;
          if (current.v != 0.0 && (v < 0.0) != (current.v < 0.0)) {
            cost += grid.gear_change_penalty;
          }
          bool valid = true;
          int steps = 0;
          bool reached_goal = false;
          for (int j = 0; j < substeps; ++j) {
            pose = bicycle_step(pose, v, delta, grid.dt, vehicle);
            if (
              pose.x < lo.x() || pose.x > hi.x() || pose.y < lo.y() || pose.y > hi.y() ||
              !has_static_clearance(pose, footprint, statics, grid.min_static_clearance))
            {
              valid = false;
              break;
            }
            cost += 1.0 + (v < 0.0 ? grid.reverse_penalty : 0.0);
            ++steps;
            if (matches_goal(pose, goals, grid)) {
              reached_goal = true;
              break;
            }
          }
          if (steps == 0) {
            continue;
          }
          any_forward = any_forward || (v > 0.0 && valid);
          if (!valid) {
            continue;
          }

          const std::uint64_t key = state_key(pose, v, grid);
          const auto it = best_g.find(key);
          if (it != best_g.end() && it->second <= cost + 1e-9 && !reached_goal) {
            continue;
          }
          if (it == best_g.end() || cost < it->second) {
            best_g[key] = cost;
          }
          nodes.push_back({pose, v, delta, entry.node, steps, cost});
          open.push(
            {cost + heuristic(pose, goals, field, vehicle, grid), cost, seq++,
             static_cast<int>(nodes.size()) - 1});
        }
      }
    }
  }

  result.expanded = nodes.size();
  return result;
}

}  // namespace avp::planner
