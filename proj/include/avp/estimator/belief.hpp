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

#ifndef AVP__ESTIMATOR__BELIEF_HPP_
#define AVP__ESTIMATOR__BELIEF_HPP_

#include <algorithm>
#include <cmath>
#include <vector>

namespace avp::estimator
{

/// Poisson arrival/departure rates of untracked parking traffic, with the
/// derived one-step transition probabilities.
struct RateModel
{
  double lambda_arrive{0.000624};
  double lambda_depart{0.000378};
  double dt{0.1};

  /// P(occupied stays occupied over one step): no departure event.
  double mu1() const { return std::exp(-lambda_depart * dt); }
  /// P(vacant becomes occupied over one step): at least one arrival.
  double mu2() const { return 1.0 - std::exp(-lambda_arrive * dt); }
  /// Fixed point of the unobservable-spot recursion, lambda_a/(lambda_a+lambda_d).
  double stationary() const
  {
    const double m1 = mu1();
    const double m2 = mu2();
    return m2 / (m2 + 1.0 - m1);
  }
};

/// Initialization class of a spot's belief, set by the first/current
/// observation: seen vacant, seen occupied, or outside the field of view.
enum class InitClass { Vacant, Occupied, Unobservable };

/// One-step belief prediction. `q_next` is the occupancy pressure for the
/// next step: arrival probability for Vacant/Unobservable-style transitions,
/// stay probability for Occupied.
///
///   Vacant:       b' = q(1-b) + mu1 b
///   Occupied:     b' = 1 - [(1-mu2)(1-b) + (1-q) b] = mu2 (1-b) + q b
///   Unobservable: b' = mu2 (1-b) + mu1 b
inline double predict_belief(double b, double q_next, InitClass init, const RateModel & rates)
{
  b = std::clamp(b, 0.0, 1.0);
  q_next = std::clamp(q_next, 0.0, 1.0);
  double predicted = 0.0;
  switch (init) {
    case InitClass::Vacant:
      predicted = q_next * (1.0 - b) + rates.mu1() * b;
      break;
    case InitClass::Occupied:
      predicted = rates.mu2() * (1.0 - b) + q_next * b;
      break;
    case InitClass::Unobservable:
      predicted = rates.mu2() * (1.0 - b) + rates.mu1() * b;
      break;
  }
  return std::clamp(predicted, 0.0, 1.0);
}

/// Bayes measurement update through a binary symmetric channel with
/// crossover 1 - p_c. p_c = 1 means the observation is fully trusted and the
/// caller seeds the belief from it directly, so the prior passes through.
inline double update_belief(double b_prior, int z, double p_c)
{
  b_prior = std::clamp(b_prior, 0.0, 1.0);
  if (p_c >= 1.0) {
    return b_prior;
  }
  const double likelihood_occ = z == 1 ? p_c : 1.0 - p_c;
  const double likelihood_vac = z == 1 ? 1.0 - p_c : p_c;
  const double denom = likelihood_occ * b_prior + likelihood_vac * (1.0 - b_prior);
  if (denom <= 1e-300) {
    return b_prior;
  }
  return std::clamp(likelihood_occ * b_prior / denom, 0.0, 1.0);
}

/// Belief trajectory of one spot over the estimation horizon.
/// b[0] is the current-time posterior, b.back() the horizon-end forecast
/// used by the candidate filter.
struct SpotBelief
{
  int spot_id{0};
  InitClass init_class{InitClass::Unobservable};
  std::vector<double> b;
};

}  // namespace avp::estimator

#endif  // AVP__ESTIMATOR__BELIEF_HPP_
