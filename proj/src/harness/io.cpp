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

#include "avp/harness/io.hpp"

#include "avp/geometry/fov.hpp"
#include "avp/sim/layout.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <stdexcept>

namespace avp::harness
{

namespace
{

using nlohmann::json;

std::string kind_name(estimator::AgentKind kind)
{
  return kind == estimator::AgentKind::Vehicle ? "vehicle" : "pedestrian";
}

estimator::AgentKind kind_from(const std::string & name)
{
  if (name == "vehicle") {
    return estimator::AgentKind::Vehicle;
  }
  if (name == "pedestrian") {
    return estimator::AgentKind::Pedestrian;
  }
  throw std::runtime_error("scenario: unknown agent kind '" + name + "'");
}

std::string script_name(sim::ScriptKind script)
{
  switch (script) {
    case sim::ScriptKind::ExitSpot:
      return "exit_spot";
    case sim::ScriptKind::EnterSpot:
      return "enter_spot";
    case sim::ScriptKind::PedestrianWalk:
      return "pedestrian_walk";
  }
  return "exit_spot";
}

sim::ScriptKind script_from(const std::string & name)
{
  if (name == "exit_spot") {
    return sim::ScriptKind::ExitSpot;
  }
  if (name == "enter_spot") {
    return sim::ScriptKind::EnterSpot;
  }
  if (name == "pedestrian_walk") {
    return sim::ScriptKind::PedestrianWalk;
  }
  throw std::runtime_error("scenario: unknown script '" + name + "'");
}

std::string ego_mode_name(sim::EgoStart::Mode mode)
{
  switch (mode) {
    case sim::EgoStart::Mode::Randomized:
      return "randomized";
    case sim::EgoStart::Mode::Entrance:
      return "entrance";
    case sim::EgoStart::Mode::Pose:
      return "pose";
  }
  return "randomized";
}

sim::EgoStart::Mode ego_mode_from(const std::string & name)
{
  if (name == "randomized") {
    return sim::EgoStart::Mode::Randomized;
  }
  if (name == "entrance") {
    return sim::EgoStart::Mode::Entrance;
  }
  if (name == "pose") {
    return sim::EgoStart::Mode::Pose;
  }
  throw std::runtime_error("scenario: unknown ego start mode '" + name + "'");
}

std::string action_name(strategy::Action action)
{
  switch (action) {
    case strategy::Action::Park:
      return "park";
    case strategy::Action::Explore:
      return "explore";
    case strategy::Action::Contingency:
      return "contingency";
  }
  return "contingency";
}

std::string init_name(estimator::InitClass init)
{
  switch (init) {
    case estimator::InitClass::Vacant:
      return "vacant";
    case estimator::InitClass::Occupied:
      return "occupied";
    case estimator::InitClass::Unobservable:
      return "unobservable";
  }
  return "unobservable";
}

json pose_to_json(const geometry::Pose2d & pose)
{
  return json{{"x", pose.x}, {"y", pose.y}, {"theta", pose.theta}};
}

geometry::Pose2d pose_from_json(const json & j)
{
  geometry::Pose2d pose;
  pose.x = j.value("x", 0.0);
  pose.y = j.value("y", 0.0);
  pose.theta = j.value("theta", 0.0);
  return pose;
}

json vec_to_json(const Eigen::Vector2d & v) { return json::array({v.x(), v.y()}); }

Eigen::Vector2d vec_from_json(const json & j)
{
  if (!j.is_array() || j.size() != 2) {
    throw std::runtime_error("scenario: expected [x, y] pair");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

/// Deterministic fields only; wall-clock runtime is reported elsewhere.
json metrics_core_json(const EpisodeMetrics & m)
{
  json j;
  j["parked"] = m.parked;
  j["collided"] = m.collided;
  j["parking_time"] = m.parking_time;
  j["path_length"] = m.path_length;
  j["avg_dist_dyn"] = m.avg_dist_dyn;
  j["min_dist_static"] = m.min_dist_static;
  j["smoothness_cost"] = m.smoothness_cost;
  j["avg_heading_rate"] = m.avg_heading_rate;
  j["avg_curvature"] = m.avg_curvature;
  return j;
}

json stat_to_json(const MetricStat & s) { return json{{"mean", s.mean}, {"std", s.stddev}}; }

std::ofstream open_for_write(const std::string & path)
{
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write '" + path + "'");
  }
  return out;
}

std::string stat_cell(const MetricStat & s)
{
  std::ostringstream out;
  out << std::setprecision(6) << s.mean << "±" << s.stddev;
  return out.str();
}

}  // namespace

json scenario_to_json(const sim::ScenarioConfig & cfg)
{
  json j;
  j["schema_version"] = kSchemaVersion;
  j["name"] = cfg.name;
  j["lot"] = json{
    {"rows", cfg.lot.rows},
    {"cols", cfg.lot.cols},
    {"spot_length", cfg.lot.spot_length},
    {"spot_width", cfg.lot.spot_width},
    {"road_width", cfg.lot.road_width},
    {"boundary_spacing", cfg.lot.boundary_spacing},
  };
  j["occupancy_near"] = cfg.occupancy_near;
  j["occupancy_far"] = cfg.occupancy_far;
  j["vehicle_agents"] = cfg.vehicle_agents;
  j["pedestrian_agents"] = cfg.pedestrian_agents;
  j["timeout_s"] = cfg.timeout_s;
  j["dt"] = cfg.dt;
  j["ego_start"] = json{
    {"mode", ego_mode_name(cfg.ego_start.mode)},
    {"pose", pose_to_json(cfg.ego_start.pose)},
  };
  j["explicit_agents"] = json::array();
  for (const auto & agent : cfg.explicit_agents) {
    json a;
    a["kind"] = kind_name(agent.kind);
    a["script"] = script_name(agent.script);
    a["spot_id"] = agent.spot_id;
    a["spawn_time"] = agent.spawn_time;
    if (agent.entry_pose) {
      a["entry_pose"] = pose_to_json(*agent.entry_pose);
    }
    if (agent.start) {
      a["start"] = vec_to_json(*agent.start);
    }
    if (agent.velocity) {
      a["velocity"] = vec_to_json(*agent.velocity);
    }
    j["explicit_agents"].push_back(std::move(a));
  }
  j["occupancy_overrides"] = json::array();
  for (const auto & ov : cfg.occupancy_overrides) {
    j["occupancy_overrides"].push_back(json{{"spot_id", ov.spot_id}, {"occupied", ov.occupied}});
  }
  return j;
}

sim::ScenarioConfig scenario_from_json(const json & j)
{
  sim::ScenarioConfig cfg;
  try {
    cfg.name = j.value("name", cfg.name);
    if (j.contains("lot")) {
      const json & lot = j.at("lot");
      cfg.lot.rows = lot.value("rows", cfg.lot.rows);
      cfg.lot.cols = lot.value("cols", cfg.lot.cols);
      cfg.lot.spot_length = lot.value("spot_length", cfg.lot.spot_length);
      cfg.lot.spot_width = lot.value("spot_width", cfg.lot.spot_width);
      cfg.lot.road_width = lot.value("road_width", cfg.lot.road_width);
      cfg.lot.boundary_spacing = lot.value("boundary_spacing", cfg.lot.boundary_spacing);
    }
    cfg.occupancy_near = j.value("occupancy_near", cfg.occupancy_near);
    cfg.occupancy_far = j.value("occupancy_far", cfg.occupancy_far);
    cfg.vehicle_agents = j.value("vehicle_agents", cfg.vehicle_agents);
    cfg.pedestrian_agents = j.value("pedestrian_agents", cfg.pedestrian_agents);
    cfg.timeout_s = j.value("timeout_s", cfg.timeout_s);
    cfg.dt = j.value("dt", cfg.dt);
    if (j.contains("ego_start")) {
      const json & ego = j.at("ego_start");
      cfg.ego_start.mode = ego_mode_from(ego.value("mode", std::string("randomized")));
      if (ego.contains("pose")) {
        cfg.ego_start.pose = pose_from_json(ego.at("pose"));
      }
    }
    for (const json & a : j.value("explicit_agents", json::array())) {
      sim::AgentScript agent;
      agent.kind = kind_from(a.value("kind", std::string("vehicle")));
      agent.script = script_from(a.value("script", std::string("exit_spot")));
      agent.spot_id = a.value("spot_id", agent.spot_id);
      agent.spawn_time = a.value("spawn_time", agent.spawn_time);
      if (a.contains("entry_pose")) {
        agent.entry_pose = pose_from_json(a.at("entry_pose"));
      }
      if (a.contains("start")) {
        agent.start = vec_from_json(a.at("start"));
      }
      if (a.contains("velocity")) {
        agent.velocity = vec_from_json(a.at("velocity"));
      }
      cfg.explicit_agents.push_back(std::move(agent));
    }
    for (const json & o : j.value("occupancy_overrides", json::array())) {
      sim::OccupancyOverride ov;
      ov.spot_id = o.value("spot_id", 0);
      ov.occupied = o.value("occupied", false);
      cfg.occupancy_overrides.push_back(ov);
    }
  } catch (const json::exception & e) {
    throw std::runtime_error(std::string("scenario: ") + e.what());
  }

  if (cfg.lot.rows < 1 || cfg.lot.cols < 1) {
    throw std::runtime_error("scenario: lot needs at least one row and column");
  }
  if (cfg.lot.spot_length <= 0.0 || cfg.lot.spot_width <= 0.0 || cfg.lot.road_width <= 0.0) {
    throw std::runtime_error("scenario: lot dimensions must be positive");
  }
  if (cfg.lot.boundary_spacing <= 0.0) {
    throw std::runtime_error("scenario: boundary_spacing must be positive");
  }
  if (cfg.dt <= 0.0 || cfg.timeout_s <= 0.0) {
    throw std::runtime_error("scenario: dt and timeout_s must be positive");
  }
  if (cfg.vehicle_agents < 0 || cfg.pedestrian_agents < 0) {
    throw std::runtime_error("scenario: agent counts must be non-negative");
  }
  return cfg;
}

sim::ScenarioConfig load_scenario(const std::string & path)
{
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot read scenario '" + path + "'");
  }
  json j;
  try {
    in >> j;
  } catch (const json::exception & e) {
    throw std::runtime_error("scenario '" + path + "': " + e.what());
  }
  return scenario_from_json(j);
}

void save_scenario(const sim::ScenarioConfig & cfg, const std::string & path)
{
  auto out = open_for_write(path);
  out << scenario_to_json(cfg).dump(2) << "\n";
}

std::string resolve_out_dir(const std::string & cli_value)
{
  const char * env = std::getenv("AVP_OUT_DIR");
  if (env != nullptr && env[0] != '\0') {
    return env;
  }
  return cli_value;
}

void ensure_dir(const std::string & path)
{
  std::error_code ec;
  std::filesystem::create_directories(path, ec);
  if (ec) {
    throw std::runtime_error("cannot create directory '" + path + "': " + ec.message());
  }
}

void write_metrics_json(
  const std::string & path, const std::string & method, std::uint64_t seed,
  const EpisodeMetrics & metrics)
{
  json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "metrics";
  j["method"] = method;
  j["seed"] = seed;
  j["metrics"] = metrics_core_json(metrics);
  auto out = open_for_write(path);
  out << j.dump(2) << "\n";
}

void write_trace(
  const std::string & path, const sim::ScenarioConfig & cfg, const std::string & method,
  std::uint64_t seed, const EpisodeResult & result)
{
  const sim::LotLayout layout = sim::LotLayout::build(cfg.lot);
  const geometry::FovParams fov;

  json header;
  header["kind"] = "header";
  header["schema_version"] = kSchemaVersion;
  header["scenario"] = cfg.name;
  header["method"] = method;
  header["seed"] = seed;
  header["dt"] = cfg.dt;
  header["lot"] = json{{"width", layout.width()}, {"height", layout.height()}};
  header["fov"] = json{
    {"r_x", fov.r_x}, {"r_y", fov.r_y}, {"zeta", fov.zeta}, {"eps", fov.eps},
    {"gamma", fov.gamma}};
  header["n_spots"] = layout.spots().size();
  header["spots"] = json::array();
  for (const auto & spot : layout.spots()) {
    header["spots"].push_back(json{
      {"id", spot.id},
      {"x", spot.center.x()},
      {"y", spot.center.y()},
      {"theta", spot.heading},
      {"length", spot.length},
      {"width", spot.width},
    });
  }

  auto out = open_for_write(path);
  out << header.dump() << "\n";
  for (const auto & c : result.cycles) {
    json line;
    line["kind"] = "cycle";
    line["k"] = c.k;
    line["t"] = c.t;
    line["x"] = c.ego.x;
    line["y"] = c.ego.y;
    line["theta"] = c.ego.theta;
    line["v"] = c.v;
    line["action"] = action_name(c.action);
    line["spot_id"] = c.spot_id;
    line["t_w"] = c.t_w_steps;
    line["cost"] = c.cost;
    line["info_gain"] = c.info_gain;
    line["goal"] = c.exploration_goal;
    line["held"] = c.held;
    line["min_vehicle"] = c.min_vehicle;
    line["min_pedestrian"] = c.min_pedestrian;
    line["min_static"] = c.min_static;
    out << line.dump() << "\n";
  }
  for (const auto & b : result.beliefs) {
    json line;
    line["kind"] = "belief";
    line["t"] = b.t;
    line["spot_id"] = b.spot_id;
    line["init"] = init_name(b.init);
    line["b"] = b.b;
    line["b_end"] = b.b_end;
    out << line.dump() << "\n";
  }
  json tail;
  tail["kind"] = "result";
  tail["metrics"] = metrics_core_json(result.metrics);
  out << tail.dump() << "\n";
}

TraceData read_trace(const std::string & path)
{
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot read trace '" + path + "'");
  }
  TraceData data;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) {
      continue;
    }
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception & e) {
      throw std::runtime_error(
        "trace '" + path + "' line " + std::to_string(line_no) + ": " + e.what());
    }
    const std::string kind = j.value("kind", std::string());
    if (kind == "header") {
      data.header = std::move(j);
    } else if (kind == "cycle") {
      data.cycles.push_back(std::move(j));
    } else if (kind == "belief") {
      data.beliefs.push_back(std::move(j));
    } else if (kind == "result") {
      data.result = std::move(j);
    }
  }
  if (data.header.is_null()) {
    throw std::runtime_error("trace '" + path + "' has no header line");
  }
  if (data.header.value("schema_version", 0) != kSchemaVersion) {
    throw std::runtime_error("trace '" + path + "' has an unsupported schema_version");
  }
  return data;
}

void write_replay(const std::string & path, const TraceData & trace)
{
  json out;
  out["schema_version"] = kSchemaVersion;
  out["kind"] = "replay";
  out["scenario"] = trace.header.value("scenario", std::string());
  out["method"] = trace.header.value("method", std::string());
  out["seed"] = trace.header.value("seed", 0ULL);
  out["dt"] = trace.header.value("dt", 0.1);
  out["lot"] = trace.header.value("lot", json::object());
  out["spots"] = trace.header.value("spots", json::array());

  const json fov = trace.header.value("fov", json::object());
  const double r_x = fov.value("r_x", 12.425);
  const double r_y = fov.value("r_y", 5.58);
  const double zeta = fov.value("zeta", 2.485);
  const double eps = fov.value("eps", 1.0);

  out["ego_path"] = json::array();
  out["fov_boxes"] = json::array();
  out["decisions"] = json::array();
  for (const auto & c : trace.cycles) {
    const double t = c.value("t", 0.0);
    const double x = c.value("x", 0.0);
    const double y = c.value("y", 0.0);
    const double theta = c.value("theta", 0.0);
    out["ego_path"].push_back(
      json{{"t", t}, {"x", x}, {"y", y}, {"theta", theta}, {"v", c.value("v", 0.0)}});
    const Eigen::Vector2d center =
      Eigen::Vector2d(x, y) + geometry::rotation_matrix(theta) * Eigen::Vector2d(zeta, 0.0);
    out["fov_boxes"].push_back(json{
      {"t", t},
      {"x", center.x()},
      {"y", center.y()},
      {"theta", theta},
      {"hx", r_x * eps},
      {"hy", r_y * eps},
    });
    out["decisions"].push_back(json{
      {"t", t},
      {"action", c.value("action", std::string())},
      {"spot_id", c.value("spot_id", -1)},
      {"t_w", c.value("t_w", 0)},
      {"goal", c.value("goal", 0)},
    });
  }

  std::map<int, json> series;
  for (const auto & b : trace.beliefs) {
    const int spot_id = b.value("spot_id", 0);
    auto [it, inserted] = series.try_emplace(spot_id, json::array());
    it->second.push_back(json{
      {"t", b.value("t", 0.0)},
      {"b", b.value("b", 0.5)},
      {"b_end", b.value("b_end", 0.5)},
      {"init", b.value("init", std::string("unobservable"))},
    });
  }
  out["beliefs"] = json::array();
  for (auto & [spot_id, records] : series) {
    out["beliefs"].push_back(json{{"spot_id", spot_id}, {"records", std::move(records)}});
  }

  if (!trace.result.is_null()) {
    out["result"] = trace.result.value("metrics", json::object());
  }

  auto file = open_for_write(path);
  file << out.dump() << "\n";
}

void write_matrix_csv(const std::string & path, const std::vector<MethodSummary> & summaries)
{
  auto out = open_for_write(path);
  out << "Method,Runtime (s),Path length (m),Parking time (s),Avg dist dynamic (m),"
         "Min dist static (m),Smoothness,Avg heading rate (deg/s),Avg curvature (1/m)\n";
  for (const auto & s : summaries) {
    out << s.method << "," << stat_cell(s.runtime_per_cycle) << "," << stat_cell(s.path_length)
        << "," << stat_cell(s.parking_time) << "," << stat_cell(s.avg_dist_dyn) << ","
        << stat_cell(s.min_dist_static) << "," << stat_cell(s.smoothness_cost) << ","
        << stat_cell(s.avg_heading_rate) << "," << stat_cell(s.avg_curvature) << "\n";
  }
}

void write_matrix_json(
  const std::string & path, const sim::ScenarioConfig & cfg, std::uint64_t master_seed,
  const std::vector<EpisodeRow> & rows, const std::vector<MethodSummary> & summaries)
{
  json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "matrix";
  j["scenario"] = cfg.name;
  j["master_seed"] = master_seed;
  j["summaries"] = json::array();
  for (const auto & s : summaries) {
    j["summaries"].push_back(json{
      {"method", s.method},
      {"episodes", s.episodes},
      {"parked", s.parked_count},
      {"collided", s.collided_count},
      {"runtime_per_cycle", stat_to_json(s.runtime_per_cycle)},
      {"path_length", stat_to_json(s.path_length)},
      {"parking_time", stat_to_json(s.parking_time)},
      {"avg_dist_dyn", stat_to_json(s.avg_dist_dyn)},
      {"min_dist_static", stat_to_json(s.min_dist_static)},
      {"smoothness_cost", stat_to_json(s.smoothness_cost)},
      {"avg_heading_rate", stat_to_json(s.avg_heading_rate)},
      {"avg_curvature", stat_to_json(s.avg_curvature)},
    });
  }
  j["episodes"] = json::array();
  for (const auto & row : rows) {
    json e = metrics_core_json(row.metrics);
    e["method"] = row.method;
    e["episode"] = row.episode;
    e["seed"] = row.seed;
    e["runtime_per_cycle"] = row.metrics.runtime_per_cycle;
    j["episodes"].push_back(std::move(e));
  }
  auto out = open_for_write(path);
  out << j.dump(2) << "\n";
}

}  // namespace avp::harness
