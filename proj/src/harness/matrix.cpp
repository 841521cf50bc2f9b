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

#include "avp/harness/matrix.hpp"

#include "avp/common/rng.hpp"

#include <omp.h>

#include <algorithm>
#include <stdexcept>

namespace avp::harness
{

std::uint64_t episode_seed(std::uint64_t master_seed, int index)
{
  return common::Rng::derive(master_seed, static_cast<std::uint64_t>(index)).next_u64();
}

MatrixResult run_matrix(
  const sim::ScenarioConfig & cfg, const std::vector<std::string> & methods, int seeds,
  std::uint64_t master_seed, int threads)
{
  if (seeds < 1) {
    throw std::invalid_argument("matrix needs at least one seed");
  }
  std::vector<MethodId> ids;
  ids.reserve(methods.size());
  for (const auto & name : methods) {
    ids.push_back(parse_method(name));
  }

  const int jobs = static_cast<int>(methods.size()) * seeds;
  std::vector<EpisodeMetrics> metrics(static_cast<std::size_t>(jobs));
  std::vector<std::string> errors(static_cast<std::size_t>(jobs));

#pragma omp parallel for schedule(static) num_threads(std::max(threads, 1))
  for (int job = 0; job < jobs; ++job) {
    const MethodId & id = ids[static_cast<std::size_t>(job / seeds)];
    const int index = job % seeds;
    try {
      EpisodeOptions opts;
      opts.threads = 1;
      metrics[static_cast<std::size_t>(job)] =
        run_episode(cfg, id, episode_seed(master_seed, index), opts).metrics;
    } catch (const std::exception & e) {
      errors[static_cast<std::size_t>(job)] = e.what();
    }
  }

  for (const auto & error : errors) {
    if (!error.empty()) {
      throw std::runtime_error("episode failed: " + error);
    }
  }

  MatrixResult result;
  result.rows.reserve(static_cast<std::size_t>(jobs));
  for (std::size_t m = 0; m < methods.size(); ++m) {
    std::vector<EpisodeMetrics> per_method;
    per_method.reserve(static_cast<std::size_t>(seeds));
    for (int index = 0; index < seeds; ++index) {
      const std::size_t job = m * static_cast<std::size_t>(seeds) + static_cast<std::size_t>(index);
      EpisodeRow row;
      row.method = methods[m];
      row.episode = index;
      row.seed = episode_seed(master_seed, index);
      row.metrics = metrics[job];
      per_method.push_back(row.metrics);
      result.rows.push_back(std::move(row));
    }
    result.summaries.push_back(summarize(methods[m], per_method));
  }
  return result;
}

}  // namespace avp::harness
