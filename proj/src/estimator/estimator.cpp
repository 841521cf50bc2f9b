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

#include "avp/estimator/estimator.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <algorithm>
#include <stdexcept>

namespace avp::estimator
{
namespace
{

constexpr double kOccupantGate = 0.3;
constexpr double kMinOccupantProbability = 1e-9;

}  // namespace

Estimator::Estimator(
  const EstimatorParams & params, EstimatorMode mode, std::vector<geometry::SpotGeom> spots)
: params_(params), mode_(mode), spots_(std::move(spots))
{
  reset();
}

void Estimator::reset()
{
  beliefs_.assign(spots_.size(), 0.5);
}

int Estimator::horizon_steps() const
{
  return mode_ == EstimatorMode::Greedy ? 1 : params_.horizon_steps;
}

Estimator::CycleContext Estimator::prepare_cycle(
  const geometry::Pose2d & ego, const std::vector<sensing::SpotObservation> & observations,
  const std::vector<AgentPrediction> & predictions) const
{
  CycleContext ctx;
  ctx.observations.resize(spots_.size());
  for (std::size_t s = 0; s < spots_.size(); ++s) {
    ctx.observations[s].spot_id = static_cast<int>(s);
  }
  for (const auto & obs : observations) {
    if (obs.spot_id < 0 || static_cast<std::size_t>(obs.spot_id) >= spots_.size()) {
      throw std::invalid_argument("observation references an unknown spot");
    }
    ctx.observations[static_cast<std::size_t>(obs.spot_id)] = obs;
  }
  for (const auto & pred : predictions) {
    if (pred.mean.empty()) {
      continue;
    }
    if (geometry::classify_view(ego, pred.mean.front(), params_.sensing.fov) ==
        geometry::ViewClass::Unobserved) {
      continue;
    }
    ctx.visible.push_back(&pred);
  }
  // Map each spot to the visible vehicle currently sitting in it, if any.
  ctx.occupant.assign(spots_.size(), -1);
  for (std::size_t i = 0; i < ctx.visible.size(); ++i) {
    const auto & pred = *ctx.visible[i];
    if (pred.kind != AgentKind::Vehicle) {
      continue;
    }
    for (const auto & spot : spots_) {
      if (spot.contains(pred.mean.front(), kOccupantGate)) {
        ctx.occupant[static_cast<std::size_t>(spot.id)] = static_cast<int>(i);
        break;
      }
    }
  }
  return ctx;
}

double Estimator::dynamic_occupancy(
  const CycleContext & ctx, const Eigen::Vector2d & spot_center, int step) const
{
  const bool position_only = mode_ == EstimatorMode::PositionOnly;
  double complement = 1.0;
  for (std::size_t i = 0; i < ctx.visible.size(); ++i) {
    const auto & pred = *ctx.visible[i];
    const std::size_t k = std::min<std::size_t>(step, pred.mean.size() - 1);
    const double p = agent_spot_probability(
      pred.mean[k], pred.cov[k], pred.velocity[k], pred.sigma_v[k], spot_center,
      params_.interaction, position_only);
    complement *= 1.0 - std::clamp(p, 0.0, 1.0);
  }
  return 1.0 - complement;
}

SpotBelief Estimator::estimate_spot(int spot_id, const CycleContext & ctx) const
{
  const auto & spot = spots_[static_cast<std::size_t>(spot_id)];
  const auto & obs = ctx.observations[static_cast<std::size_t>(spot_id)];
  const RateModel & rates = params_.rates;

  SpotBelief out;
  out.spot_id = spot_id;

  const bool observed = obs.view != geometry::ViewClass::Unobserved;
  out.init_class = !observed ? InitClass::Unobservable
                             : (obs.z == 1 ? InitClass::Occupied : InitClass::Vacant);

  const double carried = beliefs_[static_cast<std::size_t>(spot_id)];
  double b = 0.0;
  double p_c = 0.5;
  if (!observed) {
    b = predict_belief(carried, 0.0, InitClass::Unobservable, rates);
  } else if (obs.view == geometry::ViewClass::Full) {
    p_c = 1.0;
    b = obs.z == 1 ? 1.0 : 0.0;
  } else {
    p_c = obs.confidence;
    b = update_belief(carried, obs.z, p_c);
  }

  const int horizon = horizon_steps();
  out.b.resize(static_cast<std::size_t>(horizon) + 1);
  out.b[0] = b;

  // Occupied spots with a tracked occupant read their departure forecast from
  // the occupant's own predicted presence, normalized by its current value so
  // a stationary car keeps the belief pinned.
  const int occupant = out.init_class == InitClass::Occupied
                         ? ctx.occupant[static_cast<std::size_t>(spot_id)]
                         : -1;
  double occupant_now = 0.0;
  if (occupant >= 0) {
    const auto & pred = *ctx.visible[static_cast<std::size_t>(occupant)];
    occupant_now = agent_spot_probability(
      pred.mean.front(), pred.cov.front(), pred.velocity.front(), pred.sigma_v.front(),
      spot.center, params_.interaction, mode_ == EstimatorMode::PositionOnly);
  }
  const bool tracked = occupant >= 0 && occupant_now > kMinOccupantProbability;

  InitClass predict_class = out.init_class;
  if (mode_ == EstimatorMode::IdenticalPrediction && out.init_class != InitClass::Unobservable) {
    predict_class = InitClass::Vacant;
  }

  for (int k = 1; k <= horizon; ++k) {
    double q_eff = 0.0;
    switch (predict_class) {
      case InitClass::Vacant: {
        const double q_dyn = dynamic_occupancy(ctx, spot.center, k);
        q_eff = 1.0 - (1.0 - q_dyn) * (1.0 - rates.mu2());
        break;
      }
      case InitClass::Occupied: {
        if (tracked) {
          const auto & pred = *ctx.visible[static_cast<std::size_t>(occupant)];
          const std::size_t idx = std::min<std::size_t>(k, pred.mean.size() - 1);
          const double p_k = agent_spot_probability(
            pred.mean[idx], pred.cov[idx], pred.velocity[idx], pred.sigma_v[idx], spot.center,
            params_.interaction, mode_ == EstimatorMode::PositionOnly);
          q_eff = std::clamp(p_k / occupant_now, 0.0, 1.0) * rates.mu1();
        } else {
          q_eff = rates.mu1();
        }
        break;
      }
      case InitClass::Unobservable:
        break;
    }
    b = predict_belief(b, q_eff, predict_class, rates);
    if (observed) {
      b = update_belief(b, obs.z, p_c);
    }
    out.b[static_cast<std::size_t>(k)] = b;
  }
  return out;
}

std::vector<SpotBelief> Estimator::run_cycle(
  const geometry::Pose2d & ego, const std::vector<sensing::SpotObservation> & observations,
  const std::vector<AgentPrediction> & predictions, int threads)
{
  const CycleContext ctx = prepare_cycle(ego, observations, predictions);
  const int n = static_cast<int>(spots_.size());
  std::vector<SpotBelief> out(spots_.size());
#ifdef _OPENMP
  #pragma omp parallel for schedule(static) num_threads(std::max(threads, 1))
  for (int s = 0; s < n; ++s) {
    out[static_cast<std::size_t>(s)] = estimate_spot(s, ctx);
  }
#else
  (void)threads;
  for (int s = 0; s < n; ++s) {
    out[static_cast<std::size_t>(s)] = estimate_spot(s, ctx);
  }
#endif
  for (int s = 0; s < n; ++s) {
    beliefs_[static_cast<std::size_t>(s)] = out[static_cast<std::size_t>(s)].b[0];
  }
  return out;
}

std::vector<SpotBelief> Estimator::estimate(
  const geometry::Pose2d & ego, const std::vector<sensing::SpotObservation> & observations,
  const std::vector<AgentPrediction> & predictions, int threads)
{
  return run_cycle(ego, observations, predictions, threads);
}

std::vector<SpotBelief> Estimator::estimate_serial(
  const geometry::Pose2d & ego, const std::vector<sensing::SpotObservation> & observations,
  const std::vector<AgentPrediction> & predictions)
{
  const CycleContext ctx = prepare_cycle(ego, observations, predictions);
  const int n = static_cast<int>(spots_.size());
  std::vector<SpotBelief> out(spots_.size());
  for (int s = 0; s < n; ++s) {
    out[static_cast<std::size_t>(s)] = estimate_spot(s, ctx);
  }
  for (int s = 0; s < n; ++s) {
    beliefs_[static_cast<std::size_t>(s)] = out[static_cast<std::size_t>(s)].b[0];
  }
  return out;
}

}  // namespace avp::estimator
