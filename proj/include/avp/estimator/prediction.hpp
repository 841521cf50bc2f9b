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

#ifndef AVP__ESTIMATOR__PREDICTION_HPP_
#define AVP__ESTIMATOR__PREDICTION_HPP_

#include <Eigen/Core>

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace avp::estimator
{

enum class AgentKind { Vehicle, Pedestrian };

struct SingularCovariance : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

/// Predicted trajectory distribution of one dynamic agent over the horizon.
/// All vectors hold horizon_steps + 1 samples (index 0 is the current time).
struct AgentPrediction
{
  int agent_id{0};
  AgentKind kind{AgentKind::Vehicle};
  bool visible{false};
  std::vector<Eigen::Vector2d> mean;
  std::vector<double> heading;
  std::vector<Eigen::Matrix2d> cov;
  std::vector<Eigen::Vector2d> velocity;
  std::vector<double> sigma_v;
};

struct InteractionParams
{
  double alpha_d{0.1};
  double alpha_1{0.04};
  double alpha_2{2.5};
  double beta_l{0.1};
  double beta_w{0.1};
  Eigen::Vector2d process_noise{0.01, 0.005};
  double rho{0.005};
  double pedestrian_radius{0.3};
};

/// Initial position covariance: diag(beta_l * length, beta_w * width) for
/// vehicles, diag(radius, radius) for pedestrians.
Eigen::Matrix2d initial_covariance(
  AgentKind kind, double length, double width, const InteractionParams & params);

/// One-step covariance propagation Sigma' = R (Sigma + Q) R^T with the body
/// heading at the current step.
Eigen::Matrix2d propagate_covariance(
  const Eigen::Matrix2d & cov, double heading, const Eigen::Vector2d & process_noise);

/// Velocity covariance (Sigma_next + Sigma_prev - 2 rho I) / dt^2, projected
/// back to positive semidefinite if the correlation term overshoots.
Eigen::Matrix2d velocity_covariance(
  const Eigen::Matrix2d & cov_next, const Eigen::Matrix2d & cov_prev, double rho, double dt);

/// Probability that one agent occupies the spot at one prediction step:
/// a distance kernel on the squared Mahalanobis distance times a heading
/// alignment factor. `position_only` drops the alignment factor.
/// Throws SingularCovariance when cov is not invertible.
double agent_spot_probability(
  const Eigen::Vector2d & mean, const Eigen::Matrix2d & cov, const Eigen::Vector2d & velocity,
  double sigma_v, const Eigen::Vector2d & spot_center, const InteractionParams & params,
  bool position_only);

/// Combined occupancy q = 1 - prod_j (1 - p_j).
double combined_occupancy(std::span<const double> probabilities);

}  // namespace avp::estimator

#endif  // AVP__ESTIMATOR__PREDICTION_HPP_
