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

#ifndef AVP__HARNESS__EPISODE_HPP_
#define AVP__HARNESS__EPISODE_HPP_

#include "avp/estimator/belief.hpp"
#include "avp/estimator/estimator.hpp"
#include "avp/geometry/pose.hpp"
#include "avp/harness/metrics.hpp"
#include "avp/sim/world.hpp"
#include "avp/strategy/planner.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace avp::harness
{

/// One estimator/strategy pairing. The six studied methods each vary exactly
/// one of the two modules away from (Full, Full).
struct MethodId
{
  estimator::EstimatorMode estimator{estimator::EstimatorMode::Full};
  strategy::StrategyMode strategy{strategy::StrategyMode::Full};
};

/// Canonical method names, in reporting order.
const std::vector<std::string> & method_names();

/// Throws std::invalid_argument naming the valid methods when `name` is
/// unknown.
MethodId parse_method(const std::string & name);

std::string method_name(const MethodId & method);

/// Executed step record: the decision taken at time t and the world
/// clearances measured after the step completed.
struct CycleRecord
{
  int k{0};
  double t{0.0};
  geometry::Pose2d ego;
  double v{0.0};
  strategy::Action action{strategy::Action::Contingency};
  int spot_id{-1};
  int t_w_steps{0};
  double cost{0.0};
  double info_gain{0.0};
  int exploration_goal{0};
  bool held{false};
  double min_vehicle{0.0};
  double min_pedestrian{0.0};
  double min_static{0.0};
};

/// One spot's belief at one cycle: the current-time posterior and the
/// horizon-end forecast the candidate filter uses.
struct BeliefSample
{
  double t{0.0};
  int spot_id{0};
  estimator::InitClass init{estimator::InitClass::Unobservable};
  double b{0.5};
  double b_end{0.5};
};

/// Hook into the episode loop, called once per executed cycle.
class EpisodeObserver
{
public:
  virtual ~EpisodeObserver() = default;
  virtual void on_cycle(
    const CycleRecord & record, const std::vector<estimator::SpotBelief> & beliefs,
    const strategy::Decision & decision, const sim::World & world)
  {
    (void)record;
    (void)beliefs;
    (void)decision;
    (void)world;
  }
};

struct EpisodeOptions
{
  int threads{1};
  /// Collect per-cycle and per-spot records for trace output.
  bool record_trace{false};
  EpisodeObserver * observer{nullptr};
};

struct EpisodeResult
{
  EpisodeMetrics metrics;
  std::vector<CycleRecord> cycles;
  std::vector<BeliefSample> beliefs;
};

/// Runs one closed-loop episode: sense, estimate, plan, apply the first
/// control, step the world; terminates on parked, collision, or the scenario
/// timeout. Deterministic in (cfg, method, seed) apart from
/// metrics.runtime_per_cycle.
EpisodeResult run_episode(
  const sim::ScenarioConfig & cfg, const MethodId & method, std::uint64_t seed,
  const EpisodeOptions & opts = {});

}  // namespace avp::harness

#endif  // AVP__HARNESS__EPISODE_HPP_
