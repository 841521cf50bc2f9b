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

#include "avp/harness/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace avp::harness
{

MetricStat metric_stat(std::vector<double> values)
{
  MetricStat stat;
  if (values.empty()) {
    return stat;
  }
  std::sort(values.begin(), values.end());
  double sum = 0.0;
  for (const double v : values) {
    sum += v;
  }
  stat.mean = sum / static_cast<double>(values.size());
  if (values.size() < 2) {
    return stat;
  }
  double sq = 0.0;
  for (const double v : values) {
    const double d = v - stat.mean;
    sq += d * d;
  }
  stat.stddev = std::sqrt(sq / static_cast<double>(values.size() - 1));
  return stat;
}

MethodSummary summarize(const std::string & method, const std::vector<EpisodeMetrics> & episodes)
{
  MethodSummary summary;
  summary.method = method;
  summary.episodes = static_cast<int>(episodes.size());

  std::vector<double> runtime;
  std::vector<double> length;
  std::vector<double> park_time;
  std::vector<double> dyn;
  std::vector<double> stat;
  std::vector<double> smooth;
  std::vector<double> heading;
  std::vector<double> curvature;
  for (const auto & m : episodes) {
    summary.parked_count += m.parked ? 1 : 0;
    summary.collided_count += m.collided ? 1 : 0;
    if (!m.parked) {
      continue;
    }
    runtime.push_back(m.runtime_per_cycle);
    length.push_back(m.path_length);
    park_time.push_back(m.parking_time);
    dyn.push_back(m.avg_dist_dyn);
    stat.push_back(m.min_dist_static);
    smooth.push_back(m.smoothness_cost);
    heading.push_back(m.avg_heading_rate);
    curvature.push_back(m.avg_curvature);
  }

  summary.runtime_per_cycle = metric_stat(std::move(runtime));
  summary.path_length = metric_stat(std::move(length));
  summary.parking_time = metric_stat(std::move(park_time));
  summary.avg_dist_dyn = metric_stat(std::move(dyn));
  summary.min_dist_static = metric_stat(std::move(stat));
  summary.smoothness_cost = metric_stat(std::move(smooth));
  summary.avg_heading_rate = metric_stat(std::move(heading));
  summary.avg_curvature = metric_stat(std::move(curvature));
  return summary;
}

}  // namespace avp::harness
