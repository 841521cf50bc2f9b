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

#include "avp/sim/static_index.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace avp::sim
{
namespace
{

constexpr double kFarDistance = 1e9;

/// 1D squared distance transform (Felzenszwalb & Huttenlocher).
void transform_1d(const std::vector<double> & f, std::vector<double> & d, int n)
{
  static thread_local std::vector<int> v;
  static thread_local std::vector<double> z;
  v.assign(static_cast<std::size_t>(n), 0);
  z.assign(static_cast<std::size_t>(n) + 1, 0.0);
  int k = 0;
  v[0] = 0;
  z[0] = -kFarDistance;
  z[1] = kFarDistance;
  for (int q = 1; q < n; ++q) {
    double s = ((f[q] + 1.0 * q * q) - (f[v[k]] + 1.0 * v[k] * v[k])) / (2.0 * (q - v[k]));
    while (s <= z[k]) {
      --k;
      s = ((f[q] + 1.0 * q * q) - (f[v[k]] + 1.0 * v[k] * v[k])) / (2.0 * (q - v[k]));
    }
    ++k;
    v[k] = q;
    z[k] = s;
    z[k + 1] = kFarDistance;
  }
  k = 0;
  for (int q = 0; q < n; ++q) {
    while (z[k + 1] < static_cast<double>(q)) {
      ++k;
    }
    const double dq = static_cast<double>(q - v[k]);
    d[static_cast<std::size_t>(q)] = dq * dq + f[v[k]];
  }
}

}  // namespace

void StaticIndex::rebuild(
  std::vector<Eigen::Vector2d> points, const Eigen::Vector2d & bounds_min,
  const Eigen::Vector2d & bounds_max)
{
  points_ = std::move(points);
  bounds_min_ = bounds_min;
  bounds_max_ = bounds_max;
  ++version_;
  build_buckets();
  build_distance_grid();
}

int StaticIndex::bucket_coord_x(double x) const
{
  const int c = static_cast<int>(std::floor((x - bounds_min_.x()) / kBucketCell));
  return std::clamp(c, 0, bucket_nx_ - 1);
}

int StaticIndex::bucket_coord_y(double y) const
{
  const int c = static_cast<int>(std::floor((y - bounds_min_.y()) / kBucketCell));
  return std::clamp(c, 0, bucket_ny_ - 1);
}

void StaticIndex::build_buckets()
{
  const Eigen::Vector2d span = bounds_max_ - bounds_min_;
  bucket_nx_ = std::max(1, static_cast<int>(std::ceil(span.x() / kBucketCell)));
  bucket_ny_ = std::max(1, static_cast<int>(std::ceil(span.y() / kBucketCell)));
  const std::size_t n_cells = static_cast<std::size_t>(bucket_nx_) * bucket_ny_;

  std::vector<std::uint32_t> counts(n_cells + 1, 0);
  std::vector<std::uint32_t> cell_of(points_.size());
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const std::uint32_t cell =
      static_cast<std::uint32_t>(bucket_coord_y(points_[i].y())) * bucket_nx_ +
      bucket_coord_x(points_[i].x());
    cell_of[i] = cell;
    ++counts[cell + 1];
  }
  for (std::size_t c = 1; c < counts.size(); ++c) {
    counts[c] += counts[c - 1];
  }
  bucket_offsets_ = counts;
  bucket_order_.assign(points_.size(), 0);
  std::vector<std::uint32_t> cursor(bucket_offsets_.begin(), bucket_offsets_.end() - 1);
  for (std::size_t i = 0; i < points_.size(); ++i) {
    bucket_order_[cursor[cell_of[i]]++] = static_cast<std::uint32_t>(i);
  }
}

void StaticIndex::build_distance_grid()
{
  const Eigen::Vector2d span = bounds_max_ - bounds_min_;
  dist_nx_ = std::max(1, static_cast<int>(std::ceil(span.x() / kDistanceCell)) + 1);
  dist_ny_ = std::max(1, static_cast<int>(std::ceil(span.y() / kDistanceCell)) + 1);
  const std::size_t n = static_cast<std::size_t>(dist_nx_) * dist_ny_;
  std::vector<double> work(n, kFarDistance);
  for (const auto & p : points_) {
    const int cx = std::clamp(
      static_cast<int>(std::floor((p.x() - bounds_min_.x()) / kDistanceCell)), 0, dist_nx_ - 1);
    const int cy = std::clamp(
      static_cast<int>(std::floor((p.y() - bounds_min_.y()) / kDistanceCell)), 0, dist_ny_ - 1);
    work[static_cast<std::size_t>(cy) * dist_nx_ + cx] = 0.0;
  }
  distance_grid_.assign(n, static_cast<float>(kFarDistance));
  if (points_.empty()) {
    return;
  }

  // Two-pass separable squared distance transform in cell units.
  std::vector<double> line(static_cast<std::size_t>(std::max(dist_nx_, dist_ny_)));
  std::vector<double> out(line.size());
  for (int y = 0; y < dist_ny_; ++y) {
    for (int x = 0; x < dist_nx_; ++x) {
      line[static_cast<std::size_t>(x)] = work[static_cast<std::size_t>(y) * dist_nx_ + x];
    }
    transform_1d(line, out, dist_nx_);
    for (int x = 0; x < dist_nx_; ++x) {
      work[static_cast<std::size_t>(y) * dist_nx_ + x] = out[static_cast<std::size_t>(x)];
    }
  }
  for (int x = 0; x < dist_nx_; ++x) {
    for (int y = 0; y < dist_ny_; ++y) {
      line[static_cast<std::size_t>(y)] = work[static_cast<std::size_t>(y) * dist_nx_ + x];
    }
    transform_1d(line, out, dist_ny_);
    for (int y = 0; y < dist_ny_; ++y) {
      work[static_cast<std::size_t>(y) * dist_nx_ + x] = out[static_cast<std::size_t>(y)];
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    distance_grid_[i] = static_cast<float>(std::sqrt(work[i]) * kDistanceCell);
  }
}

double StaticIndex::nearest_distance(const Eigen::Vector2d & center, double cap) const
{
  if (points_.empty()) {
    return cap;
  }
  double best = cap;
  const int cx = bucket_coord_x(center.x());
  const int cy = bucket_coord_y(center.y());
  const int max_ring = std::max(bucket_nx_, bucket_ny_);
  for (int ring = 0; ring <= max_ring; ++ring) {
    // Once the ring's closest possible point is farther than the current
    // best, no later ring can improve it.
    if (ring > 0 && (ring - 1) * kBucketCell >= best) {
      break;
    }
    const int x_lo = std::max(cx - ring, 0);
    const int x_hi = std::min(cx + ring, bucket_nx_ - 1);
    const int y_lo = std::max(cy - ring, 0);
    const int y_hi = std::min(cy + ring, bucket_ny_ - 1);
    for (int y = y_lo; y <= y_hi; ++y) {
      for (int x = x_lo; x <= x_hi; ++x) {
        if (ring > 0 && x != x_lo && x != x_hi && y != y_lo && y != y_hi) {
          continue;  // interior cells were visited by smaller rings
        }
        const std::size_t cell = static_cast<std::size_t>(y) * bucket_nx_ + x;
        for (std::uint32_t i = bucket_offsets_[cell]; i < bucket_offsets_[cell + 1]; ++i) {
          best = std::min(best, (points_[bucket_order_[i]] - center).norm());
        }
      }
    }
  }
  return best;
}

double StaticIndex::distance_lower_bound(const Eigen::Vector2d & p) const
{
  if (points_.empty()) {
    return kFarDistance;
  }
  const double gx = (p.x() - bounds_min_.x()) / kDistanceCell;
  const double gy = (p.y() - bounds_min_.y()) / kDistanceCell;
  const int cx = std::clamp(static_cast<int>(std::floor(gx)), 0, dist_nx_ - 1);
  const int cy = std::clamp(static_cast<int>(std::floor(gy)), 0, dist_ny_ - 1);
  const double center_to_center =
    distance_grid_[static_cast<std::size_t>(cy) * dist_nx_ + cx];
  // Query and obstacle may each sit anywhere within their cells.
  return std::max(0.0, center_to_center - 1.4143 * kDistanceCell);
}

double StaticIndex::distance_upper_bound(const Eigen::Vector2d & p) const
{
  if (points_.empty()) {
    return kFarDistance;
  }
  const double gx = (p.x() - bounds_min_.x()) / kDistanceCell;
  const double gy = (p.y() - bounds_min_.y()) / kDistanceCell;
  const int cx = std::clamp(static_cast<int>(std::floor(gx)), 0, dist_nx_ - 1);
  const int cy = std::clamp(static_cast<int>(std::floor(gy)), 0, dist_ny_ - 1);
  const double center_to_center =
    distance_grid_[static_cast<std::size_t>(cy) * dist_nx_ + cx];
  return center_to_center + 1.4143 * kDistanceCell;
}

}  // namespace avp::sim
