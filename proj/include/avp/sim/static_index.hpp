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

#ifndef AVP__SIM__STATIC_INDEX_HPP_
#define AVP__SIM__STATIC_INDEX_HPP_

#include <Eigen/Core>

#include <cstdint>
#include <vector>

namespace avp::sim
{

/// Spatial index over static obstacle points: a bucket grid for exact range
/// and nearest queries (deterministic iteration order), plus a coarse
/// distance-transform grid whose lookups lower-bound the true distance to the
/// nearest point, for cheap conservative clearance tests.
class StaticIndex
{
public:
  StaticIndex() = default;

  void rebuild(
    std::vector<Eigen::Vector2d> points, const Eigen::Vector2d & bounds_min,
    const Eigen::Vector2d & bounds_max);

  int version() const { return version_; }
  const std::vector<Eigen::Vector2d> & points() const { return points_; }
  const Eigen::Vector2d & bounds_min() const { return bounds_min_; }
  const Eigen::Vector2d & bounds_max() const { return bounds_max_; }

  /// Invokes fn(point) for every point within `radius` of `center`, in a
  /// fixed deterministic order.
  template <typename Fn>
  void for_each_in_radius(const Eigen::Vector2d & center, double radius, Fn && fn) const
  {
    if (points_.empty()) {
      return;
    }
    const double r2 = radius * radius;
    const int cx_lo = bucket_coord_x(center.x() - radius);
    const int cx_hi = bucket_coord_x(center.x() + radius);
    const int cy_lo = bucket_coord_y(center.y() - radius);
    const int cy_hi = bucket_coord_y(center.y() + radius);
    for (int cy = cy_lo; cy <= cy_hi; ++cy) {
      for (int cx = cx_lo; cx <= cx_hi; ++cx) {
        const std::size_t cell = static_cast<std::size_t>(cy) * bucket_nx_ + cx;
        for (std::uint32_t i = bucket_offsets_[cell]; i < bucket_offsets_[cell + 1]; ++i) {
          const Eigen::Vector2d & p = points_[bucket_order_[i]];
          if ((p - center).squaredNorm() <= r2) {
            fn(p);
          }
        }
      }
    }
  }

  /// Exact distance to the nearest point, capped at `cap`.
  double nearest_distance(const Eigen::Vector2d & center, double cap = 1e9) const;

  /// Conservative lower bound of nearest_distance via the distance grid.
  double distance_lower_bound(const Eigen::Vector2d & p) const;

  /// Loose upper bound of nearest_distance via the distance grid.
  double distance_upper_bound(const Eigen::Vector2d & p) const;

private:
  int bucket_coord_x(double x) const;
  int bucket_coord_y(double y) const;
  void build_buckets();
  void build_distance_grid();

  std::vector<Eigen::Vector2d> points_;
  Eigen::Vector2d bounds_min_{0.0, 0.0};
  Eigen::Vector2d bounds_max_{0.0, 0.0};
  int version_{0};

  static constexpr double kBucketCell = 1.0;
  int bucket_nx_{0};
  int bucket_ny_{0};
  std::vector<std::uint32_t> bucket_offsets_;
  std::vector<std::uint32_t> bucket_order_;

  static constexpr double kDistanceCell = 0.15;
  int dist_nx_{0};
  int dist_ny_{0};
  std::vector<float> distance_grid_;
};

}  // namespace avp::sim

#endif  // AVP__SIM__STATIC_INDEX_HPP_
