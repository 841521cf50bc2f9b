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

#ifndef AVP__HARNESS__MATRIX_HPP_
#define AVP__HARNESS__MATRIX_HPP_

#include "avp/harness/episode.hpp"
#include "avp/harness/metrics.hpp"
#include "avp/sim/world.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace avp::harness
{

struct EpisodeRow
{
  std::string method;
  int episode{0};
  std::uint64_t seed{0};
  EpisodeMetrics metrics;
};

struct MatrixResult
{
  /// Method-major, episode-minor; every method sees the same seed sequence.
  std::vector<EpisodeRow> rows;
  std::vector<MethodSummary> summaries;
};

/// Seed of episode `index`, derived from the master seed. Methods share it
/// so ablation comparisons are seed-matched.
std::uint64_t episode_seed(std::uint64_t master_seed, int index);

/// Runs methods x seeds episodes. Episodes are independent and may run
/// concurrently (`threads`); the merge order is fixed, so results do not
/// depend on the thread count. Throws std::invalid_argument for unknown
/// method names and propagates scenario errors.
MatrixResult run_matrix(
  const sim::ScenarioConfig & cfg, const std::vector<std::string> & methods, int seeds,
  std::uint64_t master_seed, int threads = 1);

}  // namespace avp::harness

#endif  // AVP__HARNESS__MATRIX_HPP_
