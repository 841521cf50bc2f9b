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

#ifndef AVP__HARNESS__IO_HPP_
#define AVP__HARNESS__IO_HPP_

#include "avp/harness/episode.hpp"
#include "avp/harness/matrix.hpp"
#include "avp/harness/metrics.hpp"
#include "avp/sim/world.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace avp::harness
{

/// Version stamped into every file this module writes.
inline constexpr int kSchemaVersion = 1;

nlohmann::json scenario_to_json(const sim::ScenarioConfig & cfg);
/// Missing fields keep their defaults; malformed values throw
/// std::runtime_error with the offending key.
sim::ScenarioConfig scenario_from_json(const nlohmann::json & j);

sim::ScenarioConfig load_scenario(const std::string & path);
void save_scenario(const sim::ScenarioConfig & cfg, const std::string & path);

/// Output directory: the AVP_OUT_DIR environment variable when set,
/// otherwise `cli_value`.
std::string resolve_out_dir(const std::string & cli_value);
void ensure_dir(const std::string & path);

/// Episode metrics as one JSON document. Wall-clock runtime is deliberately
/// left out so identical (scenario, method, seed) runs produce identical
/// bytes; callers report runtime separately.
void write_metrics_json(
  const std::string & path, const std::string & method, std::uint64_t seed,
  const EpisodeMetrics & metrics);

/// JSON-lines trace: a header line (scenario, lot and FoV geometry), one
/// cycle line per executed step, one belief line per spot per step, and a
/// closing result line.
void write_trace(
  const std::string & path, const sim::ScenarioConfig & cfg, const std::string & method,
  std::uint64_t seed, const EpisodeResult & result);

struct TraceData
{
  nlohmann::json header;
  std::vector<nlohmann::json> cycles;
  std::vector<nlohmann::json> beliefs;
  nlohmann::json result;
};

TraceData read_trace(const std::string & path);

/// Plot-ready single JSON document from a trace: ego path, FoV rectangles
/// per step, per-spot belief series, decisions, and the episode result.
void write_replay(const std::string & path, const TraceData & trace);

void write_matrix_csv(const std::string & path, const std::vector<MethodSummary> & summaries);

void write_matrix_json(
  const std::string & path, const sim::ScenarioConfig & cfg, std::uint64_t master_seed,
  const std::vector<EpisodeRow> & rows, const std::vector<MethodSummary> & summaries);

}  // namespace avp::harness

#endif  // AVP__HARNESS__IO_HPP_
