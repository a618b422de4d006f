// Copyright 2026 The vqe-bayes authors.
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

// Gaussian process regression with per-observation noise. The training
// covariance is K_ij = k(theta_i, theta_j) + stderr_i^2 * delta_ij + jitter,
// factorized once per fit; posterior queries and joint sampling reuse the
// factor.

#ifndef VQB_GP_HPP_
#define VQB_GP_HPP_

#include <Eigen/Dense>
#include <vector>

#include "vqb/rng.hpp"
#include "vqb/shots.hpp"

namespace vqb {

enum class KernelKind { kRbf, kPeriodic };

// Constant-mean GP prior: mean mean_const, kernel amplitude signal_var,
// one lengthscale per input coordinate. signal_var and every lengthscale
// must be positive.
struct Hyperparameters {
  double mean_const = 0.0;
  double signal_var = 1.0;
  Eigen::VectorXd lengthscales;
};

// Immutable fitted model. chol is the lower Cholesky factor of the training
// covariance including jitter; alpha solves chol * chol^T * alpha = E - mu.
struct GpModel {
  KernelKind kind = KernelKind::kRbf;
  Hyperparameters hyper;
  std::vector<MeasurementRecord> training;
  Eigen::MatrixXd chol;
  Eigen::VectorXd alpha;
  double jitter = 0.0;
};

// RBF:      signal_var * exp(-sum_a (da)^2 / (2 la^2))
// Periodic: signal_var * exp(-sum_a (2 / la^2) sin^2(da / 2))
double kernel_eval(KernelKind kind, const Hyperparameters& hyper,
                   const Eigen::VectorXd& a, const Eigen::VectorXd& b);

// Factorizes the training covariance, escalating jitter from 1e-10 by
// factors of 100 (at most 5 escalations) until the Cholesky succeeds.
// Throws std::runtime_error if it never does.
GpModel fit(KernelKind kind, const Hyperparameters& hyper,
            const std::vector<MeasurementRecord>& records);

// Same factor and hyper as donor, but new observation values (one per
// training record). Used to reinterpret sampled energies as noise-free
// observations without refactorizing.
GpModel refit_values(const GpModel& donor, const Eigen::VectorXd& energies);

struct Posterior {
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov;
};

Posterior posterior(const GpModel& model,
                    const std::vector<Eigen::VectorXd>& points);

struct ScalarPosterior {
  double mean = 0.0;
  double variance = 0.0;
};

// Single-point posterior; the variance is floored at zero.
ScalarPosterior posterior_point(const GpModel& model,
                                const Eigen::VectorXd& point);

// k(theta_i, point) for every training input, in training order.
Eigen::VectorXd kernel_vector(const GpModel& model,
                              const Eigen::VectorXd& point);

// -1/2 r^T Kinv r - 1/2 log det K - n/2 log(2 pi), r = E - mu.
double log_marginal_likelihood(KernelKind kind, const Hyperparameters& hyper,
                               const std::vector<MeasurementRecord>& records);

// Same value; when grad is non-null it receives the analytic gradient with
// respect to (mean_const, log signal_var, log lengthscale_1..d).
double log_marginal_likelihood_grad(
    KernelKind kind, const Hyperparameters& hyper,
    const std::vector<MeasurementRecord>& records, Eigen::VectorXd* grad);

struct Mle2Result {
  Hyperparameters hyper;
  double log_marginal = 0.0;
  bool used_fallback = false;
};

// Multistart bounded maximization of the log marginal likelihood over
// (mean_const, log signal_var, log lengthscales). Deterministic: 8 fixed
// starts (lengthscales 0.1/1/10/50 isotropic, signal_var at 1x and 10x the
// sample variance), L-BFGS with analytic gradients, at most 200 iterations
// per start. Falls back to heuristic_hyperparameters when every start fails.
Mle2Result mle2_fit(KernelKind kind,
                    const std::vector<MeasurementRecord>& records);

// mean = sample mean, signal_var = sample variance (floored), all
// lengthscales pi/2.
Hyperparameters heuristic_hyperparameters(
    const std::vector<MeasurementRecord>& records);

// Draws count joint samples of the noise-free posterior at the given points:
// posterior mean plus L z with L an eigenvalue square root of the posterior
// covariance. Directions whose variance sits at the factorization-noise
// scale (<= 1e-8) collapse to the mean, so a degenerate posterior (all error
// bars zero) reproduces the training energies exactly.
std::vector<Eigen::VectorXd> sample_joint(
    const GpModel& model, const std::vector<Eigen::VectorXd>& points,
    int count, Rng& rng);

}  // namespace vqb

#endif  // VQB_GP_HPP_
