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

#include "avp/harness/episode.hpp"
#include "avp/harness/io.hpp"
#include "avp/harness/matrix.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace
{

std::vector<std::string> split_list(const std::string & csv)
{
  std::vector<std::string> out;
  std::stringstream stream(csv);
  std::string item;
  while (std::getline(stream, item, ',')) {
    const auto begin = item.find_first_not_of(" \t");
    if (begin == std::string::npos) {
      continue;
    }
    const auto end = item.find_last_not_of(" \t");
    out.push_back(item.substr(begin, end - begin + 1));
  }
  return out;
}

std::string joined_methods()
{
  std::string out;
  for (const auto & name : avp::harness::method_names()) {
    if (!out.empty()) {
      out += ",";
    }
    out += name;
  }
  return out;
}

}  // namespace

int main(int argc, char ** argv)
{
  using namespace avp;

  CLI::App app{"Occupancy-aware parking: simulator, planner ablations, and replay"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string method_name{"full"};
  std::uint64_t seed{0};
  std::string out_dir{"out"};
  int threads{1};
  std::string methods_csv = joined_methods();
  int n_seeds{20};
  std::string trace_path;
  std::string out_file;

  auto * run = app.add_subcommand("run", "Run one episode; writes metrics.json and trace.jsonl");
  run->add_option("--scenario", scenario_path, "Scenario JSON (defaults when omitted)");
  run->add_option("--method", method_name, "Method name (default: full)");
  run->add_option("--seed", seed, "Episode seed");
  run->add_option("--out", out_dir, "Output directory (AVP_OUT_DIR overrides)");
  run->add_option("--threads", threads, "Worker threads");

  auto * matrix =
    app.add_subcommand("matrix", "Run a method x seed grid; writes summary.csv and episodes.json");
  matrix->add_option("--scenario", scenario_path, "Scenario JSON (defaults when omitted)");
  matrix->add_option("--methods", methods_csv, "Comma-separated method names (default: all)");
  matrix->add_option("--seeds", n_seeds, "Number of seed-matched episodes per method");
  matrix->add_option("--seed", seed, "Master seed");
  matrix->add_option("--out", out_dir, "Output directory (AVP_OUT_DIR overrides)");
  matrix->add_option("--threads", threads, "Worker threads");

  auto * replay =
    app.add_subcommand("replay", "Convert a trace into one plot-ready JSON document");
  replay->add_option("--trace", trace_path, "Trace JSONL from `run`")->required();
  replay->add_option("--out", out_file, "Output JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp & e) {
    return app.exit(e);
  } catch (const CLI::ParseError & e) {
    app.exit(e);
    return 2;
  }

  try {
    if (run->parsed()) {
      const harness::MethodId method = harness::parse_method(method_name);
      const sim::ScenarioConfig cfg =
        scenario_path.empty() ? sim::ScenarioConfig{} : harness::load_scenario(scenario_path);
      const std::string dir = harness::resolve_out_dir(out_dir);
      harness::ensure_dir(dir);

      harness::EpisodeOptions opts;
      opts.threads = threads;
      opts.record_trace = true;
      const harness::EpisodeResult result = harness::run_episode(cfg, method, seed, opts);

      harness::write_metrics_json(dir + "/metrics.json", method_name, seed, result.metrics);
      harness::write_trace(dir + "/trace.jsonl", cfg, method_name, seed, result);

      const auto & m = result.metrics;
      std::cout << "method=" << method_name << " seed=" << seed << " parked=" << m.parked
                << " collided=" << m.collided << " parking_time=" << m.parking_time
                << "s path=" << m.path_length << "m cycle=" << m.runtime_per_cycle * 1e3
                << "ms -> " << dir << "\n";
      return 0;
    }

    if (matrix->parsed()) {
      const std::vector<std::string> methods = split_list(methods_csv);
      if (methods.empty()) {
        std::cerr << "error: --methods is empty; valid methods: " << joined_methods() << "\n";
        return 2;
      }
      const sim::ScenarioConfig cfg =
        scenario_path.empty() ? sim::ScenarioConfig{} : harness::load_scenario(scenario_path);
      const std::string dir = harness::resolve_out_dir(out_dir);
      harness::ensure_dir(dir);

      const harness::MatrixResult result =
        harness::run_matrix(cfg, methods, n_seeds, seed, threads);
      harness::write_matrix_csv(dir + "/summary.csv", result.summaries);
      harness::write_matrix_json(dir + "/episodes.json", cfg, seed, result.rows, result.summaries);

      for (const auto & s : result.summaries) {
        std::cout << std::left << std::setw(22) << s.method << " parked " << s.parked_count << "/"
                  << s.episodes << "  time " << std::setprecision(4) << s.parking_time.mean
                  << "s  path " << s.path_length.mean << "m  cycle "
                  << s.runtime_per_cycle.mean * 1e3 << "ms\n";
      }
      std::cout << "-> " << dir << "/summary.csv\n";
      return 0;
    }

    const harness::TraceData trace = harness::read_trace(trace_path);
    harness::write_replay(out_file, trace);
    std::cout << "replay: " << trace.cycles.size() << " steps, " << trace.beliefs.size()
              << " belief records -> " << out_file << "\n";
    return 0;
  } catch (const std::invalid_argument & e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error & e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception & e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
