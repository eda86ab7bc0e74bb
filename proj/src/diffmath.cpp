// SPDX-License-Identifier: Apache-2.0

#include "virtfusion/diffmath.hpp"

#include <cmath>

#include "virtfusion/errors.hpp"

namespace virtfusion::diffmath {

namespace {

void check_timestep(std::size_t t, const DiffusionSchedule& sched) {
  if (t < 1 || t > sched.timesteps()) {
    throw RangeError("timestep out of range: t=" + std::to_string(t) +
                     ", T=" + std::to_string(sched.timesteps()));
  }
}

void check_shapes(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw InvalidArgumentError("array shape mismatch: " +
                               std::to_string(a.size()) + " vs " +
                               std::to_string(b.size()));
  }
}

}  // namespace

DiffusionSchedule build_schedule(std::vector<double> betas) {
  DiffusionSchedule sched;
  sched.alphas.reserve(betas.size());
  sched.alpha_bars.reserve(betas.size());

  double running = 1.0;
  for (double beta : betas) {
    if (!(beta > 0.0 && beta < 1.0)) {
      throw InvalidArgumentError("invalid schedule: beta must be in (0, 1)");
    }
    const double alpha = 1.0 - beta;
    running *= alpha;
    sched.alphas.push_back(alpha);
    sched.alpha_bars.push_back(running);
  }
  sched.betas = std::move(betas);
  return sched;
}

std::vector<double> linear_betas(std::size_t count, double start, double end) {
  std::vector<double> betas(count);
  if (count == 1) {
    betas[0] = start;
    return betas;
  }
  for (std::size_t i = 0; i < count; ++i) {
    const double f = static_cast<double>(i) / static_cast<double>(count - 1);
    betas[i] = start + f * (end - start);
  }
  return betas;
}

std::vector<double> forward_sample(std::span<const double> x0, std::size_t t,
                                   std::span<const double> eps,
                                   const DiffusionSchedule& sched) {
  check_timestep(t, sched);
  check_shapes(x0, eps);

  const double abar = sched.alpha_bars[t - 1];
  const double signal = std::sqrt(abar);
  const double noise = std::sqrt(1.0 - abar);

  std::vector<double> out(x0.size());
  for (std::size_t i = 0; i < x0.size(); ++i) {
    out[i] = signal * x0[i] + noise * eps[i];
  }
  return out;
}

std::vector<double> posterior_mean(std::span<const double> xt, std::size_t t,
                                   std::span<const double> eps_pred,
                                   const DiffusionSchedule& sched) {
  check_timestep(t, sched);
  check_shapes(xt, eps_pred);

  const double inv_sqrt_alpha = 1.0 / std::sqrt(sched.alphas[t - 1]);
  const double coef = sched.betas[t - 1] / std::sqrt(1.0 - sched.alpha_bars[t - 1]);

  std::vector<double> out(xt.size());
  for (std::size_t i = 0; i < xt.size(); ++i) {
    out[i] = inv_sqrt_alpha * (xt[i] - coef * eps_pred[i]);
  }
  return out;
}

double fixed_variance(std::size_t t, const DiffusionSchedule& sched) {
  check_timestep(t, sched);
  return sched.betas[t - 1];
}

}  // namespace virtfusion::diffmath
