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

// Reference optimizers sharing the measurement objective and trace schema:
// SPSA (simultaneous-perturbation stochastic gradient descent) and NFT
// (sequential per-coordinate minimization of the exact sinusoidal energy
// dependence of Pauli-rotation circuits).

#ifndef VQB_BASELINES_HPP_
#define VQB_BASELINES_HPP_

#include <Eigen/Dense>

#include "vqb/rng.hpp"
#include "vqb/trace.hpp"

namespace vqb {

struct SpsaConfig {
  // Gain schedules a_k = a / (k+1+A)^alpha_exp, c_k = c / (k+1)^gamma_exp.
  // a < 0 (the default) requests auto-calibration from the first iteration's
  // own probes so that the first update moves each coordinate by about
  // first_step radians; a = 0 disables updates entirely. A < 0 requests the
  // 0.1 * iterations default.
  double a = -1.0;
  double c = 0.1;
  double big_a = -1.0;
  double alpha_exp = 0.602;
  double gamma_exp = 0.101;
  double first_step = 0.1;
  int iterations = 0;
  Eigen::VectorXd initial;  // empty: uniform random start in [0, 2pi]^dim
};

struct NftConfig {
  int reset_interval = 4;
  int measurements = 0;     // total objective-call budget, >= 3
  Eigen::VectorXd initial;  // empty: uniform random start in [0, 2pi]^dim
};

// Fit of e(phi) = amplitude * cos(phi - phase) + offset through the three
// samples e0 at phi0 and e_plus/e_minus at phi0 +- pi/2. argmin is the
// minimizing phi; amplitudes below 1e-12 report argmin = phi0 (flat fit).
struct SinusoidFit {
  double amplitude = 0.0;
  double phase = 0.0;
  double offset = 0.0;
  double argmin = 0.0;
};

SinusoidFit nft_sinusoid_fit(double e0, double e_plus, double e_minus,
                             double phi0);

// Starts from cfg.initial (uniform random in [0, 2pi]^dim when empty) and
// performs cfg.iterations updates theta <- theta - a_k g_k with the two-sided
// simultaneous-perturbation gradient estimate (2 measurements per
// iteration). Parameters are not clipped. Trace rows report the current
// iterate as incumbent; its model energy is the latest probe-pair mean.
OptimizationTrace run_spsa(const SpsaConfig& cfg, const ObjectiveFn& objective,
                           int dim, const DiagnosticsFn& diagnostics,
                           Rng& rng);

// Starts from cfg.initial wrapped to [0, 2pi)^dim (uniform random when
// empty) and cycles the coordinates, jumping each to the analytic minimum
// of the sinusoid fitted
// from the cached center energy and two +-pi/2 probes. The center energy is
// propagated analytically and re-measured before every reset_interval-th
// step (the initial measurement is the first such reset); a single leftover
// measurement re-measures the center. Runs until cfg.measurements objective
// calls have been spent.
OptimizationTrace run_nft(const NftConfig& cfg, const ObjectiveFn& objective,
                          int dim, const DiagnosticsFn& diagnostics, Rng& rng);

}  // namespace vqb

#endif  // VQB_BASELINES_HPP_
