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

#ifndef AVP__ESTIMATOR__ESTIMATOR_HPP_
#define AVP__ESTIMATOR__ESTIMATOR_HPP_

#include "avp/estimator/belief.hpp"
#include "avp/estimator/prediction.hpp"
#include "avp/geometry/spot.hpp"
#include "avp/sensing/observation.hpp"

#include <vector>

namespace avp::estimator
{

/// Ablatable estimator variants. Full is the complete model; the others
/// each degrade exactly one ingredient.
enum class EstimatorMode {
  Full,
  /// Single-step horizon: the filter value is b[t+1].
  Greedy,
  /// Observed spots all use the vacant-class transition, erasing the
  /// occupied-class departure channel.
  IdenticalPrediction,
  /// Agent-spot probabilities ignore heading alignment (A_f = 1).
  PositionOnly,
};

struct EstimatorParams
{
  RateModel rates;
  InteractionParams interaction;
  sensing::SensingParams sensing;
  int horizon_steps{50};
};

/// Recursive per-spot occupancy filter with a forward simulation of each
/// cycle's beliefs over the estimation horizon.
///
/// Per cycle: the persistent belief of every observed spot is refreshed from
/// the current observation (fully visible spots are seeded to the reading,
/// partially visible ones take a Bayes update), then a scratch copy is rolled
/// forward through predict/update pairs against the frozen observation and
/// the agents' predicted trajectories.
class Estimator
{
public:
  Estimator(
    const EstimatorParams & params, EstimatorMode mode, std::vector<geometry::SpotGeom> spots);

  void reset();

  /// Runs one estimation cycle. `observations` may be sparse; spots without
  /// an entry are treated as unobserved this cycle.
  /// `threads` > 1 parallelizes over spots with identical results.
  std::vector<SpotBelief> estimate(
    const geometry::Pose2d & ego, const std::vector<sensing::SpotObservation> & observations,
    const std::vector<AgentPrediction> & predictions, int threads = 1);

  /// Serial reference implementation; estimate() must match it bit for bit.
  std::vector<SpotBelief> estimate_serial(
    const geometry::Pose2d & ego, const std::vector<sensing::SpotObservation> & observations,
    const std::vector<AgentPrediction> & predictions);

  const std::vector<double> & beliefs_now() const { return beliefs_; }
  int horizon_steps() const;
  EstimatorMode mode() const { return mode_; }
  const EstimatorParams & params() const { return params_; }

private:
  struct CycleContext
  {
    std::vector<sensing::SpotObservation> observations;  // dense, indexed by spot id
    std::vector<const AgentPrediction *> visible;
    std::vector<int> occupant;  // index into `visible` per spot, -1 if none
  };

  CycleContext prepare_cycle(
    const geometry::Pose2d & ego, const std::vector<sensing::SpotObservation> & observations,
    const std::vector<AgentPrediction> & predictions) const;

  SpotBelief estimate_spot(int spot_id, const CycleContext & ctx) const;

  std::vector<SpotBelief> run_cycle(
    const geometry::Pose2d & ego, const std::vector<sensing::SpotObservation> & observations,
    const std::vector<AgentPrediction> & predictions, int threads);

  double dynamic_occupancy(
    const CycleContext & ctx, const Eigen::Vector2d & spot_center, int step) const;

  EstimatorParams params_;
  EstimatorMode mode_;
  std::vector<geometry::SpotGeom> spots_;
  std::vector<double> beliefs_;
};

}  // namespace avp::estimator

#endif  // AVP__ESTIMATOR__ESTIMATOR_HPP_
