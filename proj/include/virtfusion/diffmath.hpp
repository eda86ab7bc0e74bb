// SPDX-License-Identifier: Apache-2.0
//
// DDPM noise-schedule math: beta/alpha/alpha-bar sequences, the closed-form
// forward sample, and the predicted posterior mean of the reverse step. Pure
// value math on double arrays; the noise-prediction network is external and
// its output is a caller-supplied array.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace virtfusion::diffmath {

/// Variance schedule and its derived products.
/// alphas[t] = 1 - betas[t]; alpha_bars[t] = prod_{s<=t} alphas[s].
/// Arrays are 0-indexed; the public timestep t is 1-based (t in [1, T]).
struct DiffusionSchedule {
  std::vector<double> betas;
  std::vector<double> alphas;
  std::vector<double> alpha_bars;

  std::size_t timesteps() const { return betas.size(); }
};

/// Builds the derived sequences. Every beta must lie in (0, 1); alpha_bars
/// come out strictly decreasing and in (0, 1].
DiffusionSchedule build_schedule(std::vector<double> betas);

/// Evenly spaced betas from `start` to `end` inclusive. Convenience for
/// callers that only need a valid schedule of a given length.
std::vector<double> linear_betas(std::size_t count, double start, double end);

/// x_t = sqrt(alpha_bar_t) * x0 + sqrt(1 - alpha_bar_t) * eps, elementwise.
std::vector<double> forward_sample(std::span<const double> x0, std::size_t t,
                                   std::span<const double> eps,
                                   const DiffusionSchedule& sched);

/// Predicted mean of the reverse transition:
/// (1 / sqrt(alpha_t)) * (x_t - beta_t / sqrt(1 - alpha_bar_t) * eps_pred).
std::vector<double> posterior_mean(std::span<const double> xt, std::size_t t,
                                   std::span<const double> eps_pred,
                                   const DiffusionSchedule& sched);

/// Scalar multiplier of the fixed isotropic reverse-step covariance: beta_t.
double fixed_variance(std::size_t t, const DiffusionSchedule& sched);

}  // namespace virtfusion::diffmath
