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

#include "avp/sim/layout.hpp"

#include <cmath>

namespace avp::sim
{
namespace
{

// Vertical extent of one aisle plus the spot pair above it.
double block_pitch(const LotParams & p)
{
  return p.road_width + 2.0 * p.spot_length;
}

// Bottom edge of spot pair `pair` (the pair sits on top of aisle `pair`).
double pair_base(const LotParams & p, int pair)
{
  return pair * block_pitch(p) + p.road_width;
}

}  // namespace

LotLayout LotLayout::build(const LotParams & params)
{
  LotLayout out;
  out.params_ = params;
  out.width_ = 2.0 * params.road_width + params.cols * params.spot_width;
  const int pairs = params.rows / 2;
  out.height_ = (pairs + 1) * params.road_width + params.rows * params.spot_length;
  out.entrance_ = {0.5 * out.width_, out.height_};

  out.spots_.reserve(static_cast<std::size_t>(params.rows) * params.cols);
  for (int r = 0; r < params.rows; ++r) {
    const int pair = r / 2;
    const bool lower = r % 2 == 0;
    const double cy = pair_base(params, pair) + (lower ? 0.5 : 1.5) * params.spot_length;
    const double heading = lower ? M_PI_2 : -M_PI_2;
    for (int c = 0; c < params.cols; ++c) {
      geometry::SpotGeom spot;
      spot.id = r * params.cols + c;
      spot.center = {params.road_width + (c + 0.5) * params.spot_width, cy};
      spot.heading = heading;
      spot.length = params.spot_length;
      spot.width = params.spot_width;
      out.spots_.push_back(spot);
    }
  }

  const double left_x = 0.5 * params.road_width;
  const double right_x = out.width_ - 0.5 * params.road_width;
  for (int a = 0; a <= pairs; ++a) {
    const double cy = a * block_pitch(params) + 0.5 * params.road_width;
    out.intersections_.push_back({left_x, cy});
    out.intersections_.push_back({right_x, cy});
  }
  return out;
}

bool LotLayout::inside(const Eigen::Vector2d & p) const
{
  return p.x() >= 0.0 && p.x() <= width_ && p.y() >= 0.0 && p.y() <= height_;
}

bool LotLayout::on_road(const Eigen::Vector2d & p) const
{
  if (!inside(p)) {
    return false;
  }
  if (p.x() < params_.road_width || p.x() > width_ - params_.road_width) {
    return true;
  }
  const int pairs = params_.rows / 2;
  for (int pair = 0; pair < pairs; ++pair) {
    const double lo = pair_base(params_, pair);
    if (p.y() >= lo && p.y() <= lo + 2.0 * params_.spot_length) {
      return false;
    }
  }
  return true;
}

geometry::Pose2d LotLayout::entrance_pose() const
{
  return {entrance_.x(), height_ - 0.5 * params_.road_width, M_PI};
}

geometry::Pose2d LotLayout::parked_goal(int spot_id, const geometry::Footprint & footprint) const
{
  return spots_[static_cast<std::size_t>(spot_id)].parked_pose(footprint);
}

std::vector<Eigen::Vector2d> LotLayout::boundary_points() const
{
  std::vector<Eigen::Vector2d> points;
  const double spacing = params_.boundary_spacing;
  const int nx = static_cast<int>(std::ceil(width_ / spacing));
  const int ny = static_cast<int>(std::ceil(height_ / spacing));
  points.reserve(2 * (nx + ny) + 4);
  for (int i = 0; i <= nx; ++i) {
    const double x = std::min(i * spacing, width_);
    points.push_back({x, 0.0});
    points.push_back({x, height_});
  }
  for (int j = 1; j < ny; ++j) {
    const double y = std::min(j * spacing, height_);
    points.push_back({0.0, y});
    points.push_back({width_, y});
  }
  return points;
}

std::optional<Eigen::Vector2d> LotLayout::next_intersection(const geometry::Pose2d & pose) const
{
  const Eigen::Vector2d dir = pose.heading_vector();
  const Eigen::Vector2d side{-dir.y(), dir.x()};
  std::optional<Eigen::Vector2d> best;
  double best_forward = std::numeric_limits<double>::infinity();
  for (const auto & center : intersections_) {
    const Eigen::Vector2d d = center - pose.position();
    const double forward = d.dot(dir);
    const double lateral = std::abs(d.dot(side));
    if (forward > 0.5 && lateral <= 0.5 * params_.road_width && forward < best_forward) {
      best_forward = forward;
      best = center;
    }
  }
  return best;
}

double LotLayout::occupancy_probability(int row, double near_p, double far_p) const
{
  if (params_.rows <= 1) {
    return near_p;
  }
  const double frac = static_cast<double>(row) / (params_.rows - 1);
  return far_p + (near_p - far_p) * frac;
}

}  // namespace avp::sim
