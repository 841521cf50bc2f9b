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

#ifndef AVP__SENSING__OBSERVATION_HPP_
#define AVP__SENSING__OBSERVATION_HPP_

#include "avp/geometry/fov.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace avp::sensing
{

struct SensingParams
{
  double alpha_c{25.0};
  geometry::FovParams fov;
};

/// Confidence that a spot observation reflects the true state, as a function
/// of the scaled FoV distance d. Decays from ~1 at d = eps through
/// 2^{-1/2} at the midpoint to ~0.5 at d = gamma:
///
///   p_c(d) = exp(-ln2 * (1 + exp(-alpha_c * (d - ((gamma - eps)/2 + eps))))^-1)
///
/// clamped to [0.5, 1]. Callers force p_c = 1 for fully visible spots.
inline double observation_confidence(double d, const SensingParams & params)
{
  const auto & fov = params.fov;
  const double mid = 0.5 * (fov.gamma - fov.eps) + fov.eps;
  const double logistic = 1.0 / (1.0 + std::exp(-params.alpha_c * (d - mid)));
  const double p = std::exp(-M_LN2 * logistic);
  return std::clamp(p, 0.5, 1.0);
}

/// One spot observation. `z` is the sensed binary occupancy, valid unless
/// `view` is Unobserved (then z = -1 and confidence = 0.5).
struct SpotObservation
{
  int spot_id{0};
  geometry::ViewClass view{geometry::ViewClass::Unobserved};
  int z{-1};
  double confidence{0.5};
  double fov_distance{0.0};
};

}  // namespace avp::sensing

#endif  // AVP__SENSING__OBSERVATION_HPP_
