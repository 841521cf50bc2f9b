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

#include "avp/estimator/prediction.hpp"

#include <Eigen/Eigenvalues>

#include "avp/geometry/pose.hpp"

#include <algorithm>
#include <cmath>

namespace avp::estimator
{

Eigen::Matrix2d initial_covariance(
  AgentKind kind, double length, double width, const InteractionParams & params)
{
  Eigen::Matrix2d cov = Eigen::Matrix2d::Zero();
  if (kind == AgentKind::Pedestrian) {
    cov(0, 0) = params.pedestrian_radius;
    cov(1, 1) = params.pedestrian_radius;
  } else {
    cov(0, 0) = params.beta_l * length;
    cov(1, 1) = params.beta_w * width;
  }
  return cov;
}

Eigen::Matrix2d propagate_covariance(
  const Eigen::Matrix2d & cov, double heading, const Eigen::Vector2d & process_noise)
{
  const Eigen::Matrix2d r = geometry::rotation_matrix(heading);
  Eigen::Matrix2d inflated = cov;
  inflated(0, 0) += process_noise.x();
  inflated(1, 1) += process_noise.y();
  return r * inflated * r.transpose();
}

Eigen::Matrix2d velocity_covariance(
  const Eigen::Matrix2d & cov_next, const Eigen::Matrix2d & cov_prev, double rho, double dt)
{
  Eigen::Matrix2d sigma = cov_next + cov_prev - 2.0 * rho * Eigen::Matrix2d::Identity();
  sigma /= dt * dt;
  // Clamp negative eigenvalues to keep the result positive semidefinite.
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> solver(sigma);
  if (solver.eigenvalues().minCoeff() < 0.0) {
    const Eigen::Vector2d clamped = solver.eigenvalues().cwiseMax(0.0);
    sigma = solver.eigenvectors() * clamped.asDiagonal() * solver.eigenvectors().transpose();
  }
  return sigma;
}

double agent_spot_probability(
  const Eigen::Vector2d & mean, const Eigen::Matrix2d & cov, const Eigen::Vector2d & velocity,
  double sigma_v, const Eigen::Vector2d & spot_center, const InteractionParams & params,
  bool position_only)
{
  const double det = cov.determinant();
  if (!(std::abs(det) > 1e-12)) {
    throw SingularCovariance("agent position covariance is singular");
  }
  const Eigen::Vector2d offset = mean - spot_center;
  Eigen::Matrix2d inv;
  inv << cov(1, 1), -cov(0, 1), -cov(1, 0), cov(0, 0);
  inv /= det;
  const double mahalanobis_sq = offset.dot(inv * offset);

  const double distance_effect =
    1.0 / ((params.alpha_d + 1.0) * (params.alpha_d + std::exp(params.alpha_1 * mahalanobis_sq)));

  double alignment = 1.0;
  if (!position_only) {
    const double toward = velocity.dot(spot_center - mean);
    const double scale = sigma_v > 1e-12 ? 1.0 / sigma_v : 0.0;
    alignment = 1.0 / (1.0 + std::exp(-params.alpha_2 * scale * toward));
  }
  return distance_effect * alignment;
}

double combined_occupancy(std::span<const double> probabilities)
{
  double complement = 1.0;
  for (const double p : probabilities) {
    complement *= 1.0 - std::clamp(p, 0.0, 1.0);
  }
  return 1.0 - complement;
}

}  // namespace avp::estimator
