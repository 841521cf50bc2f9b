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

#ifndef AVP__HARNESS__METRICS_HPP_
#define AVP__HARNESS__METRICS_HPP_

#include <string>
#include <vector>

namespace avp::harness
{

/// Summary of one episode, computed from the executed ego trace.
struct EpisodeMetrics
{
  /// Mean wall-clock seconds of one estimate+plan cycle. Excluded from
  /// determinism comparisons; everything else is bit-reproducible.
  double runtime_per_cycle{0.0};
  double path_length{0.0};
  /// Seconds from episode start to the ego fully inside the chosen spot at
  /// rest; 0 when the episode never parked.
  double parking_time{0.0};
  /// Mean over steps (with at least one active agent) of the distance to the
  /// closest dynamic obstacle.
  double avg_dist_dyn{0.0};
  double min_dist_static{0.0};
  double smoothness_cost{0.0};
  double avg_heading_rate{0.0};  // deg/s
  double avg_curvature{0.0};     // 1/m
  bool parked{false};
  bool collided{false};
};

struct MetricStat
{
  double mean{0.0};
  double stddev{0.0};
};

/// Per-method aggregate over the episodes that parked.
struct MethodSummary
{
  std::string method;
  int episodes{0};
  int parked_count{0};
  int collided_count{0};
  MetricStat runtime_per_cycle;
  MetricStat path_length;
  MetricStat parking_time;
  MetricStat avg_dist_dyn;
  MetricStat min_dist_static;
  MetricStat smoothness_cost;
  MetricStat avg_heading_rate;
  MetricStat avg_curvature;
};

/// Mean and sample standard deviation (n-1 denominator, 0 when n < 2).
/// Values are sorted before accumulation so the result is invariant to the
/// order episodes arrive in.
MetricStat metric_stat(std::vector<double> values);

/// Aggregates episodes of one method. Only parked episodes enter the
/// mean / std columns; counts cover all of them.
MethodSummary summarize(const std::string & method, const std::vector<EpisodeMetrics> & episodes);

}  // namespace avp::harness

#endif  // AVP__HARNESS__METRICS_HPP_
