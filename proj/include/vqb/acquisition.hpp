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

// Expected improvement in closed form, its Monte-Carlo noisy variant
// (average EI over posterior samples of the latent objective at the observed
// points), and the Sobol-seeded multistart maximizer proposing the next
// parameter vector.

#ifndef VQB_ACQUISITION_HPP_
#define VQB_ACQUISITION_HPP_

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "vqb/gp.hpp"
#include "vqb/rng.hpp"

namespace vqb {

// One EI evaluation context: a noise-free model of the objective plus the
// incumbent, which is the minimum of that model's training values.
struct EiContext {
  GpModel model;
  double e_min = 0.0;
};

// Ensemble of EI contexts, one per posterior sample. shared_factor marks
// ensembles whose contexts share training inputs, hyperparameters, and
// Cholesky factor (as built by build_nei_ensemble); evaluation then reuses
// one triangular solve across all contexts.
struct NeiEnsemble {
  std::vector<EiContext> contexts;
  bool shared_factor = false;
};

// Closed form (e_min - m) Phi(z) + s phi(z), z = (e_min - m) / s, with
// (m, s^2) the posterior at theta. Degenerate s < 1e-12 returns
// max(0, e_min - m).
double expected_improvement(const EiContext& ctx, const Eigen::VectorXd& theta);

// Draws count joint posterior samples at the model's training inputs and
// refits each as a zero-error model with the parent hyperparameters.
NeiEnsemble build_nei_ensemble(const GpModel& model, int count, Rng& rng);

// Arithmetic mean of the per-context closed-form EIs.
double noisy_expected_improvement(const NeiEnsemble& ensemble,
                                  const Eigen::VectorXd& theta);

using AcquisitionFn = std::function<double(const Eigen::VectorXd&)>;

// Evaluates f at 1000 Sobol points in [0, 2pi]^dim, polishes the top 20 with
// a box-constrained quasi-Newton ascent (finite-difference gradients, step
// 1e-6), and returns the best point found. The result value never falls
// below the best raw Sobol value. Deterministic; rng is accepted for
// interface uniformity but unused.
Eigen::VectorXd maximize_acquisition(const AcquisitionFn& f, int dim,
                                     Rng& rng);

}  // namespace vqb

#endif  // VQB_ACQUISITION_HPP_
